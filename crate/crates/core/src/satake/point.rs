//! Points of the dual torus over algebraic numbers, their `W`-classes and
//! their residue fields.

use std::collections::{BTreeSet, HashMap};

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use super::datum::{Monomial, OrbitSum, RootDatum};
use super::spherical::SphericalElement;
use crate::arith::algebraic::{AlgebraicLiteral, AlgebraicNumber};
use crate::arith::field::Field;
use crate::arith::numfield::{FieldElement, FieldEmbedding, NumberField};
use crate::arith::poly::QPoly;
use crate::arith::rational::parse_rational;
use crate::arith::primitive::{primitive_element, roots_among};
use crate::arith::trager::factor_over_field;
use crate::config::Caps;
use crate::error::{Error, Result};

/// Largest orbit-sum height tried while waiting for the residue field to stabilise.
pub const MAX_GENERATOR_HEIGHT: usize = 6;

/// A coordinate in JSON: a rational string such as `"1/2"`, or an algebraic literal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordLiteral {
    Rational(String),
    Algebraic(AlgebraicLiteral),
}

impl CoordLiteral {
    pub fn parse(&self, cap: usize) -> Result<AlgebraicNumber> {
        match self {
            CoordLiteral::Rational(s) => Ok(AlgebraicNumber::from_rational(parse_rational(s)?)),
            CoordLiteral::Algebraic(l) => AlgebraicNumber::from_literal(l, cap),
        }
    }
}

/// A point `x` of the dual torus: `x^m = prod_i x_i^{m_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    pub coords: Vec<AlgebraicNumber>,
}

impl TorusPoint {
    pub fn new(coords: Vec<AlgebraicNumber>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Malformed("torus point needs at least one coordinate".into()));
        }
        if coords.iter().any(|c| c.is_zero()) {
            return Err(Error::Malformed("torus point coordinates must be nonzero".into()));
        }
        Ok(TorusPoint { coords })
    }

    pub fn from_literals(lits: &[AlgebraicLiteral], cap: usize) -> Result<Self> {
        Self::new(lits.iter().map(|l| AlgebraicNumber::from_literal(l, cap)).collect::<Result<_>>()?)
    }

    pub fn from_coord_literals(lits: &[CoordLiteral], cap: usize) -> Result<Self> {
        Self::new(lits.iter().map(|l| l.parse(cap)).collect::<Result<_>>()?)
    }

    pub fn to_literals(&self) -> Vec<AlgebraicLiteral> {
        self.coords.iter().map(|c| c.to_literal()).collect()
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.describe()).collect();
        format!("({})", parts.join(", "))
    }

    fn check_rank(&self, r: &RootDatum) -> Result<()> {
        if self.rank() != r.rank {
            return Err(Error::Malformed(format!("point has {} coordinates, root datum rank is {}", self.rank(), r.rank)));
        }
        Ok(())
    }
}

/// The coordinates of a point inside one absolute number field that contains the base.
#[derive(Debug, Clone)]
pub struct PointField {
    pub field: NumberField,
    pub coords: Vec<FieldElement>,
    pub base: FieldEmbedding,
}

pub fn point_field(x: &TorusPoint, a: &NumberField, caps: Caps) -> Result<PointField> {
    let pe = primitive_element(&x.coords, a, caps)?;
    let base = FieldEmbedding { source: a.clone(), target: pe.field.clone(), image: pe.base_image };
    Ok(PointField { field: pe.field, coords: pe.exprs, base })
}

pub fn monomial_value(k: &NumberField, coords: &[FieldElement], m: &[i64]) -> FieldElement {
    let mut acc = k.one();
    for (c, &e) in coords.iter().zip(m) {
        let base = if e < 0 { k.inv(c).expect("torus coordinates are nonzero") } else { c.clone() };
        acc = k.mul(&acc, &k.pow(&base, e.unsigned_abs()));
    }
    acc
}

/// `f(x)` computed inside the point field.
pub fn evaluate_in(r: &RootDatum, pf: &PointField, f: &SphericalElement) -> FieldElement {
    let k = &pf.field;
    let mut acc = k.zero();
    for (label, c) in &f.terms {
        let mut s = k.zero();
        for m in r.weyl_orbit(label).orbit {
            s = k.add(&s, &monomial_value(k, &pf.coords, &m));
        }
        acc = k.add(&acc, &k.mul(&pf.base.apply(c), &s));
    }
    acc
}

/// Value of a spherical element (coefficients in `a`) at a point.
pub fn evaluate(r: &RootDatum, a: &NumberField, f: &SphericalElement, x: &TorusPoint, caps: Caps) -> Result<AlgebraicNumber> {
    x.check_rank(r)?;
    let pf = point_field(x, a, caps)?;
    Ok(pf.field.to_algebraic(&evaluate_in(r, &pf, f)))
}

/// The `W`-translates of a point given by coordinates in `k`; identity first.
pub fn translates(r: &RootDatum, k: &NumberField, coords: &[FieldElement]) -> Vec<Vec<FieldElement>> {
    r.weyl()
        .iter()
        .map(|w| {
            (0..r.rank)
                .map(|j| {
                    let col: Vec<i64> = (0..r.rank).map(|i| w[i][j]).collect();
                    monomial_value(k, coords, &col)
                })
                .collect()
        })
        .collect()
}

/// Lexicographically least `W`-translate, as algebraic numbers.
pub fn canonical_key_in(r: &RootDatum, k: &NumberField, coords: &[FieldElement]) -> Vec<AlgebraicNumber> {
    let mut cache: HashMap<FieldElement, AlgebraicNumber> = HashMap::new();
    translates(r, k, coords)
        .into_iter()
        .map(|t| {
            t.iter()
                .map(|e| cache.entry(e.clone()).or_insert_with(|| k.to_algebraic(e)).clone())
                .collect::<Vec<_>>()
        })
        .min()
        .expect("W contains the identity")
}

/// Canonical representative of the `W`-class of `x`.
pub fn canonical_point(r: &RootDatum, x: &TorusPoint, caps: Caps) -> Result<TorusPoint> {
    x.check_rank(r)?;
    let pf = point_field(x, &NumberField::rationals(), caps)?;
    TorusPoint::new(canonical_key_in(r, &pf.field, &pf.coords))
}

/// Models of the point field for every embedding over `a`: the same
/// coordinates, read through each conjugate of the generator that fixes `a`.
pub fn conjugate_models(pf: &PointField, a: &NumberField, caps: Caps) -> Result<Vec<NumberField>> {
    let k = &pf.field;
    if k.degree() == a.degree() {
        return Ok(vec![k.clone()]);
    }
    let lifted = k.modulus().map(a, |c| a.from_rational(c));
    let mut rel = None;
    for (p, _) in factor_over_field(a, &lifted, caps.field)? {
        let in_k = p.map(k, |c| pf.base.apply(c));
        if in_k.eval(k, &k.gen_elem()).is_zero() {
            rel = Some(p);
            break;
        }
    }
    let rel = rel.ok_or_else(|| Error::Mismatch("point field generator has no minimal polynomial over the base".into()))?;
    let roots = roots_among(a, &rel, k.generator().conjugates())?;
    Ok(roots
        .into_iter()
        .map(|g| if &g == k.generator() { k.clone() } else { NumberField::from_generator(g, k.label()) })
        .collect())
}

/// `Gal(Qbar/A)`-conjugates of `x`, reduced modulo `W` and sorted.
pub fn galois_orbit(r: &RootDatum, a: &NumberField, x: &TorusPoint, caps: Caps) -> Result<Vec<TorusPoint>> {
    x.check_rank(r)?;
    let pf = point_field(x, a, caps)?;
    let mut keys = BTreeSet::new();
    for model in conjugate_models(&pf, a, caps)? {
        keys.insert(canonical_key_in(r, &model, &pf.coords));
    }
    keys.into_iter().map(TorusPoint::new).collect()
}

/// `y` is `W`-equivalent to a `Gal(Qbar/A)`-conjugate of `x`.
pub fn same_class(r: &RootDatum, a: &NumberField, x: &TorusPoint, y: &TorusPoint, caps: Caps) -> Result<bool> {
    let ky = canonical_point(r, y, caps)?;
    Ok(galois_orbit(r, a, x, caps)?.contains(&ky))
}

/// Orbit sums used as generators of the invariant ring: the orbits of the
/// coordinate characters when `W` acts by sign changes, otherwise every orbit
/// meeting the box of the given height.
pub fn generators(r: &RootDatum, height: usize) -> Vec<OrbitSum> {
    let mut out: BTreeSet<OrbitSum> = BTreeSet::new();
    if r.is_product_of_rank_one() {
        for j in 0..r.rank {
            let mut e = vec![0; r.rank];
            e[j] = 1;
            out.insert(r.weyl_orbit(&e));
        }
    } else {
        let h = height as i64;
        let mut m: Monomial = vec![-h; r.rank];
        loop {
            if m.iter().any(|&v| v != 0) {
                out.insert(r.weyl_orbit(&m));
            }
            let mut i = 0;
            while i < r.rank && m[i] == h {
                m[i] = -h;
                i += 1;
            }
            if i == r.rank {
                break;
            }
            m[i] += 1;
        }
    }
    let mut v: Vec<OrbitSum> = out.into_iter().collect();
    v.sort_by(|x, y| x.label.cmp(&y.label));
    v
}

/// A non-simply-connected group needs `sqrt(q)` in the coefficient field.
pub fn check_sqrt_q(r: &RootDatum, a: &NumberField, caps: Caps) -> Result<()> {
    if r.simply_connected {
        return Ok(());
    }
    let s = r.q.sqrt();
    if s * s == r.q {
        return Ok(());
    }
    let q = i64::try_from(r.q).map_err(|_| Error::Malformed("q is too large".into()))?;
    let root = AlgebraicNumber::from_root(QPoly::from_ints(&[-q, 0, 1]), 0)?;
    match a.express(&root, caps.field)? {
        Some(_) => Ok(()),
        None => Err(Error::FieldConstraint { q: r.q }),
    }
}

/// `F(x, A)`: the field generated over `A` by the generator evaluations.
#[derive(Debug, Clone)]
pub struct ResidueField {
    pub field: NumberField,
    /// `t = [F(x, A) : A]`.
    pub degree: usize,
    pub generators: Vec<Monomial>,
    pub evaluations: Vec<AlgebraicNumber>,
    /// Height at which the field stabilised.
    pub height: usize,
}

pub fn residue_field(r: &RootDatum, a: &NumberField, x: &TorusPoint, height: usize, caps: Caps) -> Result<ResidueField> {
    x.check_rank(r)?;
    check_sqrt_q(r, a, caps)?;
    let pf = point_field(x, a, caps)?;
    let eval_all = |gens: &[OrbitSum]| -> Vec<AlgebraicNumber> {
        gens.iter()
            .map(|o| {
                let f = SphericalElement::orbit_sum(r, a, &o.label);
                pf.field.to_algebraic(&evaluate_in(r, &pf, &f))
            })
            .collect()
    };
    let mut h = height.max(1);
    let mut gens = generators(r, h);
    let mut evals = eval_all(&gens);
    let mut pe = primitive_element(&evals, a, caps)?;
    if !r.is_product_of_rank_one() {
        loop {
            if h >= MAX_GENERATOR_HEIGHT {
                return Err(Error::BeyondDeskScale(format!("residue field did not stabilise by height {MAX_GENERATOR_HEIGHT}")));
            }
            let next = generators(r, h + 1);
            let next_evals = eval_all(&next);
            let mut stable = true;
            for e in &next_evals {
                if pe.field.express(e, caps.field)?.is_none() {
                    stable = false;
                    break;
                }
            }
            if stable {
                break;
            }
            h += 1;
            gens = next;
            evals = next_evals;
            pe = primitive_element(&evals, a, caps)?;
        }
    }
    Ok(ResidueField {
        degree: pe.relative_degree,
        field: pe.field,
        generators: gens.into_iter().map(|o| o.label).collect(),
        evaluations: evals,
        height: h,
    })
}
