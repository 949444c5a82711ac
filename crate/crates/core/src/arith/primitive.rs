//! Primitive elements of finitely generated number fields and the splitting of
//! tensor products `B (x)_A F`.

use super::algebraic::AlgebraicNumber;
use super::field::Field;
use super::numfield::{apply_embedding, FieldElement, KPoly, NumberField};
use super::interval::Rect;
use super::rational::Rational;
use super::trager::factor_over_field;
use crate::config::Caps;
use crate::error::{Error, Result};

/// An absolute field `Q(alpha)` containing a base field and a list of generators.
#[derive(Debug, Clone)]
pub struct PrimitiveElement {
    pub field: NumberField,
    /// Each input generator written in the power basis of `alpha`.
    pub exprs: Vec<FieldElement>,
    /// Image of the base field's generator.
    pub base_image: FieldElement,
    /// `[field : base]`.
    pub relative_degree: usize,
    /// The accepted multiplier `c` in `alpha = g_1 + c g_2 + c^2 g_3 + ...`.
    pub multiplier: i64,
}

const MAX_MULTIPLIER: i64 = 64;

/// Deterministic search: `alpha = g_1 + c g_2 + c^2 g_3 + ...` for `c = 1, 2, ...`,
/// accepting the first `c` for which every generator lies in `Q(alpha)`.
/// For a base other than Q the base generator is prepended, so `alpha` is absolute.
pub fn primitive_element(gens: &[AlgebraicNumber], base: &NumberField, caps: Caps) -> Result<PrimitiveElement> {
    if gens.is_empty() {
        return Err(Error::Malformed("primitive element needs at least one generator".into()));
    }
    let mut list: Vec<AlgebraicNumber> = Vec::new();
    if !base.is_rationals() {
        list.push(base.generator().clone());
    }
    for g in gens {
        if g.as_rational().is_none() && !list.contains(g) {
            list.push(g.clone());
        }
    }
    if list.is_empty() {
        let q = NumberField::rationals();
        let exprs = gens.iter().map(|g| q.from_rational(&g.as_rational().unwrap())).collect();
        return Ok(PrimitiveElement { field: q, exprs, base_image: FieldElement::zero(), relative_degree: 1, multiplier: 1 });
    }
    let lower = list.iter().map(|g| g.degree()).fold(1, num_integer::lcm);
    for c in 1..=MAX_MULTIPLIER {
        let alpha = combination(&list, c, caps)?;
        if alpha.degree() > caps.primitive {
            return Err(Error::CapExceeded { what: "primitive element degree", value: alpha.degree(), cap: caps.primitive });
        }
        if alpha.degree() < lower {
            continue;
        }
        let field = NumberField::from_generator(alpha.clone(), format!("Q({})", short(&alpha)));
        let mut exprs_list = Vec::with_capacity(list.len());
        for g in &list {
            match field.express(g, caps.field)? {
                Some(e) => exprs_list.push(e),
                None => break,
            }
        }
        if exprs_list.len() < list.len() {
            continue;
        }
        let base_image = if base.is_rationals() { FieldElement::zero() } else { exprs_list[0].clone() };
        let exprs = gens
            .iter()
            .map(|g| match g.as_rational() {
                Some(q) => field.from_rational(&q),
                None => exprs_list[list.iter().position(|x| x == g).unwrap()].clone(),
            })
            .collect();
        let relative_degree = field.degree() / base.degree();
        return Ok(PrimitiveElement { field, exprs, base_image, relative_degree, multiplier: c });
    }
    Err(Error::BeyondDeskScale("no primitive element found with multiplier up to 64".into()))
}

fn combination(list: &[AlgebraicNumber], c: i64, caps: Caps) -> Result<AlgebraicNumber> {
    let mut acc = list[0].clone();
    let mut coef = Rational::from_integer(1.into());
    let cq = Rational::from_integer(c.into());
    for g in &list[1..] {
        coef = &coef * &cq;
        acc = acc.add(&g.mul_rational(&coef), caps.field)?;
    }
    Ok(acc)
}

fn short(a: &AlgebraicNumber) -> String {
    let (re, im) = a.approx();
    if im.abs() < 1e-12 {
        format!("{re:.4}")
    } else {
        format!("{re:.4}{im:+.4}i")
    }
}

/// One factor `B[T]/(P_i)` of `B (x)_A F`.
#[derive(Debug, Clone)]
pub struct TensorFactor {
    /// Irreducible factor of the minimal polynomial of `F`'s generator, over `B`.
    pub poly: KPoly,
    /// `[B_i : B] = deg P_i`.
    pub relative_degree: usize,
    /// Absolute model of `B_i`, generated by `B` and a root of `P_i`.
    pub field: NumberField,
}

/// Minimal polynomial over `a` of `f`'s generator, with coefficients in `a`.
pub fn relative_minpoly(f: &NumberField, a: &NumberField, caps: Caps) -> Result<KPoly> {
    if a.is_rationals() {
        return Ok(f.modulus().map(a, |c| a.from_rational(c)));
    }
    let img = a
        .embedding_into(f, caps.field)?
        .ok_or_else(|| Error::Embedding(format!("{} does not embed in {}", a.label(), f.label())))?;
    let lifted = f.modulus().map(a, |c| a.from_rational(c));
    for (p, _) in factor_over_field(a, &lifted, caps.field)? {
        let in_f = p.map(f, |c| apply_embedding(a, f, &img, c));
        if in_f.eval(f, &f.gen_elem()).is_zero() {
            return Ok(p);
        }
    }
    Err(Error::Embedding("generator of F has no minimal polynomial over A".into()))
}

/// Splits `B (x)_A F` as a product of fields `B[T]/(P_i)`.
pub fn tensor_split(f: &NumberField, b: &NumberField, a: &NumberField, caps: Caps) -> Result<Vec<TensorFactor>> {
    let p = relative_minpoly(f, a, caps)?;
    let img_ab = a
        .embedding_into(b, caps.field)?
        .ok_or_else(|| Error::Embedding(format!("{} does not embed in {}", a.label(), b.label())))?;
    let p_b = p.map(b, |c| apply_embedding(a, b, &img_ab, c));
    let mut out = Vec::new();
    for (pi, _) in factor_over_field(b, &p_b, caps.field)? {
        let theta = root_of(b, &pi, f)?;
        let field = if pi.deg() == 1 {
            b.clone()
        } else {
            primitive_element(&[theta], b, caps)?.field
        };
        out.push(TensorFactor { relative_degree: pi.deg(), poly: pi, field });
    }
    Ok(out)
}

/// A conjugate of `f`'s generator that is a root of `pi` under `b`'s embedding.
fn root_of(b: &NumberField, pi: &KPoly, f: &NumberField) -> Result<AlgebraicNumber> {
    roots_among(b, pi, f.generator().conjugates())?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Isolation("no root of the tensor factor among conjugates".into()))
}

/// The members of `cands` that are roots of the squarefree polynomial `pi`,
/// whose coefficients are read through `b`'s embedding. `cands` must contain
/// every root of `pi`.
pub fn roots_among(b: &NumberField, pi: &KPoly, mut cands: Vec<AlgebraicNumber>) -> Result<Vec<AlgebraicNumber>> {
    let mut bits = 16u32;
    while bits <= 4096 {
        cands.retain(|t| {
            let z = t.rect(bits);
            let mut acc = Rect::real(Rational::from_integer(0.into()));
            for c in pi.coeffs().iter().rev() {
                acc = acc.mul(&z).add(&b.enclose(c, bits)).round_out(bits + 4);
            }
            acc.contains_zero()
        });
        if cands.len() <= pi.deg() {
            break;
        }
        bits *= 2;
    }
    if cands.len() != pi.deg() {
        return Err(Error::Isolation(format!("expected {} roots among candidates, kept {}", pi.deg(), cands.len())));
    }
    Ok(cands)
}

/// Degree of `Q(gens)` over Q.
pub fn joint_degree(gens: &[AlgebraicNumber], caps: Caps) -> Result<usize> {
    Ok(primitive_element(gens, &NumberField::rationals(), caps)?.field.degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::QPoly;
    use crate::arith::rational::rat;

    fn real_root(c: &[i64], near: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_region(&QPoly::from_ints(c), &Rect::square(&rat(near), &rat(0), &Rational::new(1.into(), 2.into())), 48).unwrap()
    }

    #[test]
    fn sqrt2_sqrt3() {
        let caps = Caps::default();
        let s2 = real_root(&[-2, 0, 1], 1);
        let s3 = real_root(&[-3, 0, 1], 2);
        let pe = primitive_element(&[s2.clone(), s3.clone()], &NumberField::rationals(), caps).unwrap();
        assert_eq!(pe.field.degree(), 4);
        assert_eq!(pe.field.to_algebraic(&pe.exprs[0]), s2);
        assert_eq!(pe.field.to_algebraic(&pe.exprs[1]), s3);
    }

    #[test]
    fn conjugate_pair_shares_field() {
        let caps = Caps::default();
        let p = QPoly::from_ints(&[1, 0, 1]);
        let i = AlgebraicNumber::from_region(&p, &Rect::square(&rat(0), &rat(1), &Rational::new(1.into(), 2.into())), 48).unwrap();
        let pe = primitive_element(&[i.clone(), i.neg()], &NumberField::rationals(), caps).unwrap();
        assert_eq!(pe.field.degree(), 2);
        let k = &pe.field;
        assert_eq!(pe.exprs[1], k.neg(&pe.exprs[0]));
    }

    #[test]
    fn tensor_cube_root() {
        let caps = Caps::default();
        let f = NumberField::new(&QPoly::from_ints(&[-2, 0, 0, 1]), "Q(c)", None, 16).unwrap();
        let q = NumberField::rationals();
        let parts = tensor_split(&f, &f, &q, caps).unwrap();
        let degs: Vec<usize> = parts.iter().map(|t| t.relative_degree).collect();
        assert_eq!(degs, vec![1, 2]);
        assert_eq!(parts[1].field.degree(), 6);
    }
}
