//! Algebraic numbers: a canonical minimal polynomial plus a root label.
//!
//! The label indexes the certified root list of the minimal polynomial (see
//! [`super::roots`]), so equality is structural. Arithmetic builds a candidate
//! polynomial by resultants, factors it, and picks the factor root whose
//! rectangle meets an interval enclosure of the result.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::factor::factor_over_q;
use super::field::Rationals;
use super::interval::Rect;
use super::poly::{canonical_cmp, QPoly};
use super::rational::{format_rational, parse_rational, Rational};
use super::resultant::{interpolate, resultant};
use super::roots;
use crate::error::{Error, Result};

const START_BITS: u32 = 16;
const MAX_BITS: u32 = 1 << 13;

#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: Arc<QPoly>,
    index: usize,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, o: &Self) -> bool {
        self.index == o.index && self.minpoly == o.minpoly
    }
}
impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.minpoly.hash(h);
        self.index.hash(h);
    }
}

impl Ord for AlgebraicNumber {
    /// By minimal polynomial, then root label.
    fn cmp(&self, o: &Self) -> Ordering {
        canonical_cmp(&self.minpoly, &o.minpoly).then(self.index.cmp(&o.index))
    }
}
impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// JSON literal form of an algebraic number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraicLiteral {
    pub minpoly: Vec<String>,
    pub near: NearLiteral,
    pub radius: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NearLiteral {
    pub re: String,
    pub im: String,
}

impl AlgebraicNumber {
    pub fn from_rational(q: Rational) -> Self {
        let p = QPoly::from_rationals(vec![-q, Rational::one()]);
        AlgebraicNumber { minpoly: Arc::new(p), index: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Root `index` of a monic irreducible polynomial; the caller guarantees irreducibility.
    pub fn from_root(minpoly: QPoly, index: usize) -> Result<Self> {
        let minpoly = minpoly.monic(&Rationals);
        if index >= minpoly.deg() {
            return Err(Error::Isolation(format!("root index {index} out of range")));
        }
        roots::isolate(&minpoly)?;
        Ok(AlgebraicNumber { minpoly: Arc::new(minpoly), index })
    }

    /// The unique root of `p` inside the closed rectangle `region`.
    pub fn from_region(p: &QPoly, region: &Rect, cap: usize) -> Result<Self> {
        let fz = factor_over_q(p, cap)?;
        let mut cands = Vec::new();
        for (f, _) in &fz.factors {
            for i in 0..f.deg() {
                cands.push((f.clone(), i));
            }
        }
        let mut bits = START_BITS;
        loop {
            let mut inside = Vec::new();
            let mut undecided = false;
            for (f, i) in &cands {
                let r = roots::root_rect(f, *i, bits)?;
                if r.subset_of(region) {
                    inside.push((f.clone(), *i));
                } else if r.intersects(region) {
                    undecided = true;
                }
            }
            if !undecided {
                return match inside.len() {
                    1 => {
                        let (f, i) = inside.pop().unwrap();
                        Ok(AlgebraicNumber { minpoly: Arc::new(f), index: i })
                    }
                    n => Err(Error::Isolation(format!(
                        "region {} contains {n} roots of {}",
                        region.describe(),
                        p.to_string_q()
                    ))),
                };
            }
            bits *= 2;
            if bits > MAX_BITS {
                return Err(Error::Isolation(format!(
                    "a root of {} lies on the boundary of {}",
                    p.to_string_q(),
                    region.describe()
                )));
            }
        }
    }

    pub fn from_literal(lit: &AlgebraicLiteral, cap: usize) -> Result<Self> {
        let coeffs = lit.minpoly.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let p = QPoly::from_rationals(coeffs);
        if p.deg() == 0 {
            return Err(Error::Malformed("algebraic literal needs a non-constant polynomial".into()));
        }
        let re = parse_rational(&lit.near.re)?;
        let im = parse_rational(&lit.near.im)?;
        let r = parse_rational(&lit.radius)?;
        if r < Rational::zero() {
            return Err(Error::Malformed("radius must be non-negative".into()));
        }
        Self::from_region(&p, &Rect::square(&re, &im, &r), cap)
    }

    /// A literal whose square isolates this number among the roots of its minimal polynomial.
    pub fn to_literal(&self) -> AlgebraicLiteral {
        let minpoly = self.minpoly.coeffs().iter().map(format_rational).collect();
        let mut bits = 32;
        loop {
            let r = self.rect(bits);
            let (cre, cim) = r.center();
            let rad = Rational::new(1.into(), num_bigint::BigInt::one() << (bits - 1));
            let sq = Rect::square(&cre, &cim, &rad);
            let others_clear = (0..self.degree())
                .filter(|&j| j != self.index)
                .all(|j| !roots::root_rect(&self.minpoly, j, bits).unwrap().intersects(&sq));
            if others_clear || bits >= MAX_BITS {
                return AlgebraicLiteral {
                    minpoly,
                    near: NearLiteral { re: format_rational(&cre), im: format_rational(&cim) },
                    radius: format_rational(&rad),
                };
            }
            bits *= 2;
        }
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.minpoly
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.degree() == 1).then(|| -self.minpoly.coeffs()[0].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 1 && self.minpoly.coeffs()[0].is_zero()
    }

    pub fn is_real(&self) -> bool {
        roots::is_real_root(&self.minpoly, self.index).unwrap_or(false)
    }

    /// Enclosing rectangle of width at most `2^-bits`.
    pub fn rect(&self, bits: u32) -> Rect {
        roots::root_rect(&self.minpoly, self.index, bits).expect("certified root is refinable")
    }

    pub fn approx(&self) -> (f64, f64) {
        let (re, im) = self.rect(56).center();
        (super::rational::to_f64(&re), super::rational::to_f64(&im))
    }

    pub fn describe(&self) -> String {
        if let Some(q) = self.as_rational() {
            return format_rational(&q);
        }
        let (re, im) = self.approx();
        format!("root of {} near {:.6}{:+.6}i", self.minpoly.to_string_q(), re, im)
    }

    /// All roots of the minimal polynomial, in label order.
    pub fn conjugates(&self) -> Vec<AlgebraicNumber> {
        (0..self.degree())
            .map(|i| AlgebraicNumber { minpoly: self.minpoly.clone(), index: i })
            .collect()
    }

    /// Picks the root of `candidate` (a polynomial vanishing at the target)
    /// whose rectangle meets every enclosure produced by `enclosure(bits)`.
    pub fn identify(
        candidate: &QPoly,
        cap: usize,
        enclosure: impl Fn(u32) -> Option<Rect>,
    ) -> Result<Self> {
        let fz = factor_over_q(candidate, cap)?;
        let mut cands: Vec<(QPoly, usize)> = Vec::new();
        for (f, _) in &fz.factors {
            for i in 0..f.deg() {
                cands.push((f.clone(), i));
            }
        }
        let mut bits = START_BITS;
        loop {
            if cands.len() == 1 {
                let (f, i) = cands.pop().unwrap();
                return Ok(AlgebraicNumber { minpoly: Arc::new(f), index: i });
            }
            if let Some(enc) = enclosure(bits) {
                let mut kept = Vec::new();
                for (f, i) in cands {
                    if roots::root_rect(&f, i, bits)?.intersects(&enc) {
                        kept.push((f, i));
                    }
                }
                cands = kept;
                if cands.is_empty() {
                    return Err(Error::Isolation("no candidate root meets the enclosure".into()));
                }
            }
            bits *= 2;
            if bits > MAX_BITS {
                return Err(Error::Isolation("could not separate candidate roots".into()));
            }
        }
    }

    pub fn neg(&self) -> Self {
        if let Some(q) = self.as_rational() {
            return Self::from_rational(-q);
        }
        let k = Rationals;
        let p = self.minpoly.compose(&k, &QPoly::from_ints(&[0, -1])).monic(&k);
        let me = self.clone();
        Self::identify(&p, usize::MAX, move |b| Some(me.rect(b).neg())).expect("negation is exact")
    }

    pub fn add(&self, o: &Self, cap: usize) -> Result<Self> {
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return Ok(Self::from_rational(a + b));
        }
        if let Some(b) = o.as_rational() {
            return Ok(self.add_rational(&b));
        }
        if let Some(a) = self.as_rational() {
            return Ok(o.add_rational(&a));
        }
        let (pa, pb) = (self.minpoly.as_ref(), o.minpoly.as_ref());
        check_cap(pa.deg() * pb.deg(), cap)?;
        let k = Rationals;
        let n = pa.deg() * pb.deg();
        let pts: Vec<(Rational, Rational)> = (0..=n as i64)
            .map(|t| {
                let shift = QPoly::from_ints(&[t, -1]);
                let t = Rational::from_integer(t.into());
                (t, resultant(&k, pa, &pb.compose(&k, &shift)))
            })
            .collect();
        let cand = interpolate(&pts);
        let (a, b) = (self.clone(), o.clone());
        Self::identify(&cand, cap, move |bits| Some(a.rect(bits).add(&b.rect(bits))))
    }

    pub fn sub(&self, o: &Self, cap: usize) -> Result<Self> {
        self.add(&o.neg(), cap)
    }

    pub fn add_rational(&self, q: &Rational) -> Self {
        if let Some(a) = self.as_rational() {
            return Self::from_rational(a + q);
        }
        let k = Rationals;
        let p = self
            .minpoly
            .compose(&k, &QPoly::from_rationals(vec![-q.clone(), Rational::one()]));
        let me = self.clone();
        let qq = Rect::real(q.clone());
        Self::identify(&p, usize::MAX, move |b| Some(me.rect(b).add(&qq))).expect("shift is exact")
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        if let Some(a) = self.as_rational() {
            return Self::from_rational(a * q);
        }
        let k = Rationals;
        // p(T/q) scaled to be monic.
        let mut s = Rational::one();
        let qi = q.recip();
        let coeffs: Vec<Rational> = self
            .minpoly
            .coeffs()
            .iter()
            .map(|c| {
                let v = c * &s;
                s = &s * &qi;
                v
            })
            .collect();
        let p = QPoly::from_rationals(coeffs).monic(&k);
        let me = self.clone();
        let q = q.clone();
        Self::identify(&p, usize::MAX, move |b| Some(me.rect(b).scale(&q))).expect("scaling is exact")
    }

    pub fn mul(&self, o: &Self, cap: usize) -> Result<Self> {
        if let Some(b) = o.as_rational() {
            return Ok(self.mul_rational(&b));
        }
        if let Some(a) = self.as_rational() {
            return Ok(o.mul_rational(&a));
        }
        let (pa, pb) = (self.minpoly.as_ref(), o.minpoly.as_ref());
        check_cap(pa.deg() * pb.deg(), cap)?;
        let k = Rationals;
        let n = pa.deg() * pb.deg();
        let nb = pb.deg();
        let pts: Vec<(Rational, Rational)> = (0..=n as i64)
            .map(|t| {
                // y^nb * pb(t / y) = sum_i b_i t^i y^(nb - i)
                let t = Rational::from_integer(t.into());
                let mut coeffs = vec![Rational::zero(); nb + 1];
                let mut tp = Rational::one();
                for (i, c) in pb.coeffs().iter().enumerate() {
                    coeffs[nb - i] = c * &tp;
                    tp = &tp * &t;
                }
                let q = QPoly::from_rationals(coeffs);
                (t, resultant(&k, pa, &q))
            })
            .collect();
        let cand = interpolate(&pts);
        if cand.is_zero() {
            return Err(Error::Isolation("degenerate product candidate".into()));
        }
        let (a, b) = (self.clone(), o.clone());
        Self::identify(&cand, cap, move |bits| Some(a.rect(bits).mul(&b.rect(bits)).round_out(bits + 8)))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(a) = self.as_rational() {
            return Ok(Self::from_rational(a.recip()));
        }
        let k = Rationals;
        let rev: Vec<Rational> = self.minpoly.coeffs().iter().rev().cloned().collect();
        let p = QPoly::from_rationals(rev).monic(&k);
        let me = self.clone();
        Self::identify(&p, usize::MAX, move |b| me.rect(b).inv().map(|r| r.round_out(b + 8)))
    }

    pub fn div(&self, o: &Self, cap: usize) -> Result<Self> {
        self.mul(&o.inv()?, cap)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64, cap: usize) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, cap)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, cap)?;
            }
        }
        Ok(acc)
    }

    /// Value of a rational polynomial at this number.
    pub fn eval_poly(&self, p: &QPoly, cap: usize) -> Result<Self> {
        let mut acc = Self::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self, cap)?.add_rational(c);
        }
        Ok(acc)
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { what: "candidate degree in algebraic arithmetic", value: n, cap })
    } else {
        Ok(())
    }
}
