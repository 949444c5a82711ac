//! The zero set in the dual torus of a maximal ideal of the spherical algebra.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::datum::{Monomial, OrbitSum, RootDatum};
use super::point::{canonical_point, evaluate, galois_orbit, residue_field, TorusPoint};
use super::spherical::{orbit_product, SphericalElement};
use crate::arith::algebraic::AlgebraicNumber;
use crate::arith::factor::factor_over_q;
use crate::arith::field::{Field, Rationals};
use crate::arith::interval::Rect;
use crate::arith::numfield::{FieldElement, KPoly, NumberField};
use crate::arith::primitive::{primitive_element, roots_among};
use crate::arith::rational::Rational;
use crate::arith::trager::norm;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Highest product degree searched when deriving character values.
pub const MAX_PRODUCT_DEGREE: usize = 8;

/// `V(m)` for the maximal ideal `m` cut out by a character.
#[derive(Debug, Clone)]
pub struct IdealVariety {
    /// Canonical point whose evaluations are the given character.
    pub point: TorusPoint,
    /// All points of `V(m)` up to `W`, one `Gal(Qbar/A)`-orbit.
    pub points: Vec<TorusPoint>,
    /// `[F(x, A) : A]`, equal to the number of points.
    pub residue_degree: usize,
}

/// Values of a character on orbit sums not listed in `known`, obtained by
/// writing each target as a polynomial in the known orbit sums.
fn derive_values(
    r: &RootDatum,
    k: &NumberField,
    known: &[(OrbitSum, FieldElement)],
    targets: &[Monomial],
) -> Result<Vec<FieldElement>> {
    let q = Rationals;
    let mut out: Vec<Option<FieldElement>> = targets
        .iter()
        .map(|t| known.iter().find(|(o, _)| &o.label == t).map(|(_, v)| v.clone()))
        .collect();
    // Products of known orbit sums, indexed by nondecreasing factor lists.
    let mut products: Vec<(Vec<usize>, BTreeMap<Monomial, i64>, FieldElement)> =
        vec![(Vec::new(), BTreeMap::from([(vec![0; r.rank], 1)]), k.one())];
    let mut frontier = products.clone();
    for _ in 1..=MAX_PRODUCT_DEGREE {
        if out.iter().all(Option::is_some) {
            break;
        }
        let mut next = Vec::new();
        for (idx, _, val) in &frontier {
            let start = idx.last().copied().unwrap_or(0);
            for (g, (_, v)) in known.iter().enumerate().skip(start) {
                let mut nidx = idx.clone();
                nidx.push(g);
                let factors: Vec<&OrbitSum> = nidx.iter().map(|&i| &known[i].0).collect();
                next.push((nidx, orbit_product(r, &factors), k.mul(val, v)));
            }
        }
        products.extend(next.iter().cloned());
        frontier = next;
        let mut labels: BTreeSet<Monomial> = products.iter().flat_map(|(_, p, _)| p.keys().cloned()).collect();
        labels.extend(targets.iter().cloned());
        let rows: Vec<Monomial> = labels.into_iter().collect();
        let cols: Vec<Vec<Rational>> = products
            .iter()
            .map(|(_, p, _)| rows.iter().map(|l| Rational::from_integer(p.get(l).copied().unwrap_or(0).into())).collect())
            .collect();
        let m = Matrix::from_cols(&cols, rows.len());
        for (t, slot) in targets.iter().zip(out.iter_mut()) {
            if slot.is_some() {
                continue;
            }
            let rhs: Vec<Rational> = rows.iter().map(|l| Rational::from_integer(i64::from(l == t).into())).collect();
            if let Some(c) = m.solve(&q, &rhs) {
                let mut acc = k.zero();
                for (ci, (_, _, v)) in c.iter().zip(&products) {
                    if !ci.is_zero() {
                        acc = k.add(&acc, &k.mul(&k.from_rational(ci), v));
                    }
                }
                *slot = Some(acc);
            }
        }
    }
    out.into_iter()
        .zip(targets)
        .map(|(v, t)| {
            v.ok_or_else(|| Error::BeyondDeskScale(format!("orbit sum {t:?} is not a polynomial of degree <= {MAX_PRODUCT_DEGREE} in the given values")))
        })
        .collect()
}

/// Distinct roots in Qbar of a polynomial over `k`, excluding zero.
fn nonzero_roots(k: &NumberField, p: &KPoly, caps: Caps) -> Result<Vec<AlgebraicNumber>> {
    let g = p.exact_div(k, &p.gcd(k, &p.derivative(k))).expect("gcd divides").monic(k);
    if g.deg() == 0 {
        return Ok(Vec::new());
    }
    let mut cands = Vec::new();
    for (f, _) in factor_over_q(&norm(k, &g), caps.q.max(g.deg() * k.degree()))?.factors {
        cands.extend(AlgebraicNumber::from_root(f, 0)?.conjugates());
    }
    Ok(roots_among(k, &g, cands)?.into_iter().filter(|z| !z.is_zero()).collect())
}

/// Interval test that an orbit sum might take `value` at `z`.
fn may_match(r: &RootDatum, label: &[i64], z: &[AlgebraicNumber], value: &AlgebraicNumber, bits: u32) -> bool {
    let rects: Vec<Rect> = z.iter().map(|c| c.rect(bits)).collect();
    let inv: Vec<Option<Rect>> = rects.iter().map(Rect::inv).collect();
    let mut acc = Rect::real(Rational::zero());
    for m in r.weyl_orbit(label).orbit {
        let mut t = Rect::real(Rational::from_integer(1.into()));
        for (j, &e) in m.iter().enumerate() {
            let base = if e < 0 {
                match &inv[j] {
                    Some(b) => b.clone(),
                    None => return true,
                }
            } else {
                rects[j].clone()
            };
            t = t.mul(&base.pow(e.unsigned_abs() as u32, bits + 8)).round_out(bits + 8);
        }
        acc = acc.add(&t);
    }
    acc.intersects(&value.rect(bits))
}

/// Solves for the points whose orbit-sum values are the given character and
/// returns their `Gal(Qbar/A)`-orbit.
pub fn maximal_ideal_variety(
    r: &RootDatum,
    a: &NumberField,
    character: &[(Monomial, AlgebraicNumber)],
    height: usize,
    caps: Caps,
) -> Result<IdealVariety> {
    if character.is_empty() {
        return Err(Error::Malformed("character needs at least one value".into()));
    }
    if character.iter().any(|(l, _)| l.len() != r.rank) {
        return Err(Error::Malformed("character label has the wrong rank".into()));
    }
    let values: Vec<AlgebraicNumber> = character.iter().map(|(_, v)| v.clone()).collect();
    let pe = primitive_element(&values, &NumberField::rationals(), caps)?;
    let k = pe.field;
    let known: Vec<(OrbitSum, FieldElement)> =
        character.iter().zip(pe.exprs).map(|((l, _), v)| (r.weyl_orbit(l), v)).collect();

    let mut coordinate_roots = Vec::with_capacity(r.rank);
    for j in 0..r.rank {
        let mut e = vec![0; r.rank];
        e[j] = 1;
        let size = r.weyl_orbit(&e).orbit.len();
        let targets: Vec<Monomial> = (1..=size as i64)
            .map(|s| r.weyl_orbit(&e.iter().map(|x| x * s).collect::<Vec<_>>()).label)
            .collect();
        let p = derive_values(r, &k, &known, &targets)?;
        // Newton: i e_i = sum_{l=1}^{i} (-1)^(l-1) e_{i-l} p_l.
        let mut el = vec![k.one()];
        for i in 1..=size {
            let mut acc = k.zero();
            for l in 1..=i {
                let term = k.mul(&el[i - l], &p[l - 1]);
                acc = if l % 2 == 1 { k.add(&acc, &term) } else { k.sub(&acc, &term) };
            }
            el.push(k.mul(&acc, &k.from_rational(&Rational::new(1.into(), (i as i64).into()))));
        }
        let coeffs: Vec<FieldElement> = (0..=size)
            .map(|d| {
                let i = size - d;
                if i.is_multiple_of(2) { el[i].clone() } else { k.neg(&el[i]) }
            })
            .collect();
        let poly = KPoly::from_vec(&k, coeffs);
        coordinate_roots.push(nonzero_roots(&k, &poly, caps)?);
    }

    let mut tuples: Vec<Vec<AlgebraicNumber>> = vec![Vec::new()];
    for roots in &coordinate_roots {
        tuples = tuples
            .into_iter()
            .flat_map(|t| roots.iter().map(move |z| {
                let mut t = t.clone();
                t.push(z.clone());
                t
            }))
            .collect();
    }
    let mut solutions = BTreeSet::new();
    for t in tuples {
        if !character.iter().all(|(l, v)| may_match(r, l, &t, v, 64)) {
            continue;
        }
        let x = TorusPoint::new(t)?;
        let key = canonical_point(r, &x, caps)?;
        if solutions.contains(&key) {
            continue;
        }
        let mut exact = true;
        for (l, v) in character {
            let f = SphericalElement::orbit_sum(r, &NumberField::rationals(), l);
            if &evaluate(r, &NumberField::rationals(), &f, &x, caps)? != v {
                exact = false;
                break;
            }
        }
        if exact {
            solutions.insert(key);
        }
    }
    let point = match solutions.len() {
        0 => return Err(Error::InconsistentCharacter("no torus point has these orbit-sum values".into())),
        1 => solutions.into_iter().next().unwrap(),
        n => {
            return Err(Error::InconsistentCharacter(format!(
                "{n} inequivalent points share these values; supply values on more orbit sums"
            )))
        }
    };
    let points = galois_orbit(r, a, &point, caps)?;
    let residue_degree = residue_field(r, a, &point, height, caps)?.degree;
    if residue_degree != points.len() {
        return Err(Error::Mismatch(format!("|V(m)| = {} but [F:A] = {residue_degree}", points.len())));
    }
    Ok(IdealVariety { point, points, residue_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::QPoly;
    use crate::arith::rational::{rat, rat2};

    fn sqrt2() -> AlgebraicNumber {
        AlgebraicNumber::from_region(&QPoly::from_ints(&[-2, 0, 1]), &Rect::square(&rat(1), &rat(0), &rat2(1, 2)), 48).unwrap()
    }

    #[test]
    fn a1_sqrt2() {
        let r = RootDatum::preset("A1", 100).unwrap();
        let q = NumberField::rationals();
        let v = sqrt2().mul_rational(&rat2(3, 2));
        let var = maximal_ideal_variety(&r, &q, &[(vec![-1], v)], 1, Caps::default()).unwrap();
        assert_eq!(var.points.len(), 2);
        assert_eq!(var.residue_degree, 2);
        let x = TorusPoint::new(vec![sqrt2()]).unwrap();
        assert_eq!(var.point, canonical_point(&r, &x, Caps::default()).unwrap());
    }

    #[test]
    fn a1_zero_gives_i() {
        let r = RootDatum::preset("A1", 100).unwrap();
        let q = NumberField::rationals();
        let var = maximal_ideal_variety(&r, &q, &[(vec![1], AlgebraicNumber::zero())], 1, Caps::default()).unwrap();
        assert_eq!(var.points.len(), 1);
        assert_eq!(var.point.coords[0].minpoly(), &QPoly::from_ints(&[1, 0, 1]));
    }

    #[test]
    fn a1_double_root() {
        let r = RootDatum::preset("A1", 100).unwrap();
        let q = NumberField::rationals();
        let var = maximal_ideal_variety(&r, &q, &[(vec![1], AlgebraicNumber::from_int(2))], 1, Caps::default()).unwrap();
        assert_eq!(var.point.coords, vec![AlgebraicNumber::one()]);
    }

    #[test]
    fn inconsistent_values() {
        let r = RootDatum::preset("A1", 100).unwrap();
        let q = NumberField::rationals();
        let c = [(vec![1], AlgebraicNumber::from_int(3)), (vec![2], AlgebraicNumber::from_int(3))];
        assert!(matches!(maximal_ideal_variety(&r, &q, &c, 1, Caps::default()), Err(Error::InconsistentCharacter(_))));
    }
}
