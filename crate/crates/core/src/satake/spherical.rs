//! The spherical algebra `A[X*(T)]^W`, with basis the orbit sums.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::datum::{Monomial, OrbitSum, RootDatum};
use crate::arith::field::Field;
use crate::arith::numfield::{FieldElement, NumberField};
use crate::arith::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

/// `sum_label c_label * m_label` where `m_label` is the orbit sum with that label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalElement {
    pub terms: BTreeMap<Monomial, FieldElement>,
}

/// JSON form: each coefficient is its power-basis coordinate list in the base field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphericalTerm {
    pub label: Monomial,
    pub coeff: Vec<String>,
}

impl SphericalElement {
    pub fn zero() -> Self {
        SphericalElement { terms: BTreeMap::new() }
    }

    pub fn orbit_sum(r: &RootDatum, a: &NumberField, m: &[i64]) -> Self {
        let label = r.weyl_orbit(m).label;
        SphericalElement { terms: BTreeMap::from([(label, a.one())]) }
    }

    pub fn constant(r: &RootDatum, a: &NumberField, c: FieldElement) -> Self {
        let mut s = Self::zero();
        if !a.is_zero(&c) {
            s.terms.insert(vec![0; r.rank], c);
        }
        s
    }

    /// Collects a `W`-invariant Laurent polynomial into orbit sums.
    pub fn from_laurent(r: &RootDatum, a: &NumberField, poly: &BTreeMap<Monomial, FieldElement>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in poly {
            if a.is_zero(c) {
                continue;
            }
            let o = r.weyl_orbit(m);
            for mm in &o.orbit {
                if poly.get(mm) != Some(c) {
                    return Err(Error::Mismatch(format!("Laurent polynomial is not W-invariant at {mm:?}")));
                }
            }
            terms.insert(o.label, c.clone());
        }
        Ok(SphericalElement { terms })
    }

    pub fn expand(&self, r: &RootDatum) -> BTreeMap<Monomial, FieldElement> {
        let mut out = BTreeMap::new();
        for (label, c) in &self.terms {
            for m in r.weyl_orbit(label).orbit {
                out.insert(m, c.clone());
            }
        }
        out
    }

    pub fn add(&self, a: &NumberField, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (l, c) in &o.terms {
            let v = terms.get(l).map_or_else(|| c.clone(), |d| a.add(d, c));
            if a.is_zero(&v) {
                terms.remove(l);
            } else {
                terms.insert(l.clone(), v);
            }
        }
        SphericalElement { terms }
    }

    pub fn scale(&self, a: &NumberField, c: &FieldElement) -> Self {
        if a.is_zero(c) {
            return Self::zero();
        }
        SphericalElement { terms: self.terms.iter().map(|(l, d)| (l.clone(), a.mul(c, d))).collect() }
    }

    pub fn from_terms(r: &RootDatum, a: &NumberField, terms: &[SphericalTerm]) -> Result<Self> {
        let mut s = Self::zero();
        for t in terms {
            if t.label.len() != r.rank {
                return Err(Error::Malformed(format!("label {:?} has the wrong rank", t.label)));
            }
            let coords = t.coeff.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
            if coords.len() > a.degree() {
                return Err(Error::Malformed("coefficient has more coordinates than the field degree".into()));
            }
            let o = SphericalElement::orbit_sum(r, a, &t.label);
            s = s.add(a, &o.scale(a, &a.from_coords(&coords)));
        }
        Ok(s)
    }

    pub fn to_terms(&self, a: &NumberField) -> Vec<SphericalTerm> {
        self.terms
            .iter()
            .map(|(l, c)| SphericalTerm { label: l.clone(), coeff: a.coords(c).iter().map(format_rational).collect() })
            .collect()
    }

    pub fn render(&self, a: &NumberField) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| format!("({}) m{:?}", a.render(c), l))
            .collect();
        parts.join(" + ")
    }
}

fn add_monomial(a: &[i64], b: &[i64]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Product in the spherical algebra, computed in the Laurent ring and recollected.
pub fn spherical_mul(r: &RootDatum, a: &NumberField, x: &SphericalElement, y: &SphericalElement) -> Result<SphericalElement> {
    let ex = x.expand(r);
    let ey = y.expand(r);
    let mut prod: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
    for (m, c) in &ex {
        for (n, d) in &ey {
            let k = add_monomial(m, n);
            let v = a.mul(c, d);
            let e = prod.entry(k).or_insert_with(|| a.zero());
            *e = a.add(e, &v);
        }
    }
    prod.retain(|_, c| !a.is_zero(c));
    SphericalElement::from_laurent(r, a, &prod)
}

/// Integer expansion of a product of orbit sums, in the orbit-sum basis.
pub fn orbit_product(r: &RootDatum, factors: &[&OrbitSum]) -> BTreeMap<Monomial, i64> {
    let mut acc: BTreeMap<Monomial, i64> = BTreeMap::from([(vec![0; r.rank], 1)]);
    for f in factors {
        let mut next = BTreeMap::new();
        for (m, c) in &acc {
            for n in &f.orbit {
                *next.entry(add_monomial(m, n)).or_insert(0) += c;
            }
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc.into_iter().filter(|(m, _)| &r.weyl_orbit(m).label == m).collect()
}
