//! Factorization over a number field by Trager's norm method.

use super::factor::factor_over_q;
use super::field::{Field, Rationals};
use super::numfield::{FieldElement, KPoly, NumberField};
use super::poly::{canonical_cmp, Poly, QPoly};
use super::rational::Rational;
use super::resultant::{interpolate, resultant};
use crate::error::{Error, Result};

/// Monic irreducible factors over `k` with multiplicities, in a deterministic order.
pub fn factor_over_field(k: &NumberField, p: &KPoly, cap: usize) -> Result<Vec<(KPoly, usize)>> {
    let Some(deg) = p.degree() else {
        return Err(Error::Malformed("cannot factor the zero polynomial".into()));
    };
    let d = k.degree();
    if deg * d > cap {
        return Err(Error::CapExceeded { what: "deg(p)*[F:Q] for factorization over a number field", value: deg * d, cap });
    }
    if k.is_rationals() {
        let q = p.map(&Rationals, |c| c.coeff(&Rationals, 0));
        let fz = factor_over_q(&q, cap)?;
        return Ok(fz
            .factors
            .into_iter()
            .map(|(f, e)| (f.map(k, |c| k.from_rational(c)), e))
            .collect());
    }
    let mut out = Vec::new();
    for (g, e) in p.squarefree_decomposition(k) {
        for f in factor_squarefree(k, &g, cap)? {
            out.push((f, e));
        }
    }
    out.sort_by(|a, b| kpoly_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Order by degree, then coefficientwise from the top.
pub fn kpoly_cmp(a: &KPoly, b: &KPoly) -> std::cmp::Ordering {
    a.coeffs().len().cmp(&b.coeffs().len()).then_with(|| {
        for (x, y) in a.coeffs().iter().rev().zip(b.coeffs().iter().rev()) {
            let c = canonical_cmp(x, y);
            if c.is_ne() {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// `g(T + c)`.
fn shift(k: &NumberField, g: &KPoly, c: &FieldElement) -> KPoly {
    let lin = KPoly::from_vec(k, vec![c.clone(), k.one()]);
    g.compose(k, &lin)
}

/// Norm `Res_y(m(y), g(T))` of a polynomial over `k` as a rational polynomial.
pub fn norm(k: &NumberField, g: &KPoly) -> QPoly {
    let q = Rationals;
    let n = g.deg() * k.degree();
    let pts: Vec<(Rational, Rational)> = (0..=n as i64)
        .map(|t| {
            let t = Rational::from_integer(t.into());
            let v = g.eval(k, &k.from_rational(&t));
            (t, resultant(&q, k.modulus(), &v))
        })
        .collect();
    interpolate(&pts)
}

fn factor_squarefree(k: &NumberField, g: &KPoly, cap: usize) -> Result<Vec<KPoly>> {
    let g = g.monic(k);
    if g.deg() <= 1 {
        return Ok(vec![g]);
    }
    let alpha = k.gen_elem();
    let q = Rationals;
    for s in shifts() {
        let sa = k.mul(&alpha, &k.from_int(s));
        // g_s(T) = g(T - s a)
        let gs = shift(k, &g, &k.neg(&sa));
        let nrm = norm(k, &gs);
        if !nrm.is_squarefree(&q) {
            continue;
        }
        let fz = factor_over_q(&nrm, cap)?;
        let mut out = Vec::new();
        let mut rest = gs.clone();
        for (ni, _) in fz.factors {
            let nk = ni.map(k, |c| k.from_rational(c));
            let h = rest.gcd(k, &nk);
            if h.deg() > 0 {
                rest = rest.exact_div(k, &h).unwrap();
                out.push(shift(k, &h, &sa).monic(k));
            }
        }
        debug_assert_eq!(rest.deg(), 0);
        out.sort_by(kpoly_cmp);
        return Ok(out);
    }
    unreachable!("some shift always gives a squarefree norm")
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|i: i64| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
}

/// Convenience: whether `p` has a root in `k`, returning all such roots.
pub fn roots_in_field(k: &NumberField, p: &KPoly, cap: usize) -> Result<Vec<FieldElement>> {
    Ok(factor_over_field(k, p, cap)?
        .into_iter()
        .filter(|(f, _)| f.deg() == 1)
        .map(|(f, _)| k.neg(&f.coeff(k, 0)))
        .collect())
}

/// Lifts a rational polynomial into `k[T]`.
pub fn lift_poly(k: &NumberField, p: &QPoly) -> KPoly {
    p.map(k, |c| k.from_rational(c))
}

/// Exact check that `lead(p) * prod f_i^e_i` reproduces `p`.
pub fn reassemble(k: &NumberField, p: &KPoly, factors: &[(KPoly, usize)]) -> bool {
    let prod = factors.iter().fold(KPoly::one(k), |acc, (f, e)| acc.mul(k, &f.pow(k, *e)));
    match p.lead() {
        Some(lead) => prod.scale(k, lead) == *p,
        None => false,
    }
}

/// Fields whose polynomials can be factored exactly.
pub trait FactorField: Field {
    /// Monic irreducible factors with multiplicities, deterministically ordered.
    fn factor(&self, p: &Poly<Self::Elem>, cap: usize) -> Result<Vec<(Poly<Self::Elem>, usize)>>;
}

impl FactorField for Rationals {
    fn factor(&self, p: &QPoly, cap: usize) -> Result<Vec<(QPoly, usize)>> {
        Ok(factor_over_q(p, cap)?.factors)
    }
}

impl FactorField for NumberField {
    fn factor(&self, p: &KPoly, cap: usize) -> Result<Vec<(KPoly, usize)>> {
        factor_over_field(self, p, cap)
    }
}
