//! Dense univariate polynomials over any [`Field`], lowest degree first.
//!
//! Operations take the coefficient field as an explicit context argument.

use super::field::{Field, Rationals};
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

pub type QPoly = Poly<Rational>;

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, k: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn map<G: Field>(&self, target: &G, mut f: impl FnMut(&E) -> G::Elem) -> Poly<G::Elem> {
        Poly::from_vec(target, self.coeffs.iter().map(&mut f).collect())
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug + Eq + std::hash::Hash> Poly<E> {
    pub fn from_vec<F: Field<Elem = E>>(k: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(k: &F, c: E) -> Self {
        Self::from_vec(k, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(k: &F) -> Self {
        Self::constant(k, k.one())
    }

    /// The indeterminate `T`.
    pub fn x<F: Field<Elem = E>>(k: &F) -> Self {
        Self::monomial(k, k.one(), 1)
    }

    pub fn monomial<F: Field<Elem = E>>(k: &F, c: E, d: usize) -> Self {
        let mut v = vec![k.zero(); d + 1];
        v[d] = c;
        Self::from_vec(k, v)
    }

    pub fn is_one<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.coeffs.len() == 1 && k.is_one(&self.coeffs[0])
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.lead().is_some_and(|c| k.is_one(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, k: &F, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => k.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_vec(k, v)
    }

    pub fn neg<F: Field<Elem = E>>(&self, k: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, k: &F, o: &Self) -> Self {
        self.add(k, &o.neg(k))
    }

    pub fn mul<F: Field<Elem = E>>(&self, k: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![k.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = k.add(&v[i + j], &k.mul(a, b));
            }
        }
        Self::from_vec(k, v)
    }

    pub fn scale<F: Field<Elem = E>>(&self, k: &F, c: &E) -> Self {
        Self::from_vec(k, self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    pub fn pow<F: Field<Elem = E>>(&self, k: &F, e: usize) -> Self {
        let mut acc = Self::one(k);
        for _ in 0..e {
            acc = acc.mul(k, self);
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem<F: Field<Elem = E>>(&self, k: &F, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = k.inv(d.lead().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + dd], &inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, b));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::from_vec(k, q), Self::from_vec(k, r))
    }

    pub fn rem<F: Field<Elem = E>>(&self, k: &F, d: &Self) -> Self {
        self.divrem(k, d).1
    }

    /// Quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div<F: Field<Elem = E>>(&self, k: &F, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(k, d);
        r.is_zero().then_some(q)
    }

    pub fn monic<F: Field<Elem = E>>(&self, k: &F) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(c) => {
                let inv = k.inv(c).unwrap();
                self.scale(k, &inv)
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd<F: Field<Elem = E>>(&self, k: &F, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(k, &b);
            a = b;
            b = r.monic(k);
        }
        a.monic(k)
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn xgcd<F: Field<Elem = E>>(&self, k: &F, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(k), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(k, &r1);
            let s2 = s0.sub(k, &q.mul(k, &s1));
            let t2 = t0.sub(k, &q.mul(k, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(c) => {
                let inv = k.inv(&c).unwrap();
                (r0.scale(k, &inv), s0.scale(k, &inv), t0.scale(k, &inv))
            }
        }
    }

    pub fn derivative<F: Field<Elem = E>>(&self, k: &F) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_int(i as i64)))
            .collect();
        Self::from_vec(k, v)
    }

    pub fn eval<F: Field<Elem = E>>(&self, k: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// `self(g(T))`.
    pub fn compose<F: Field<Elem = E>>(&self, k: &F, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(k, g).add(k, &Self::constant(k, c.clone())))
    }

    /// `self^e mod m`.
    pub fn pow_mod<F: Field<Elem = E>>(&self, k: &F, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(k, m);
        let mut acc = Self::one(k).rem(k, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base).rem(k, m);
            }
            base = base.mul(k, &base).rem(k, m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.gcd(k, &self.derivative(k)).deg() == 0
    }

    /// Yun's squarefree decomposition: monic squarefree `a_i` with `self = lc * prod a_i^i`.
    /// Only factors of positive degree are returned.
    pub fn squarefree_decomposition<F: Field<Elem = E>>(&self, k: &F) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic(k);
        let df = f.derivative(k);
        let a0 = f.gcd(k, &df);
        let mut b = f.exact_div(k, &a0).unwrap();
        let mut c = df.exact_div(k, &a0).unwrap();
        let mut d = c.sub(k, &b.derivative(k));
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(k, &d);
            b = b.exact_div(k, &a).unwrap();
            c = d.exact_div(k, &a).unwrap();
            d = c.sub(k, &b.derivative(k));
            if a.deg() > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Human-readable rendering in the variable `var`, highest degree first.
    pub fn render<F: Field<Elem = E>>(&self, k: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let cs = k.render(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                cs
            } else if k.is_one(c) {
                mono
            } else if cs.contains(['+', ' ']) || cs[1..].contains('-') {
                format!("({cs})*{mono}")
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(term);
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        s
    }
}

/// Shorthand constructors for polynomials over Q.
impl QPoly {
    pub fn from_ints(c: &[i64]) -> QPoly {
        QPoly::from_vec(&Rationals, c.iter().map(|&n| Rational::from_integer(n.into())).collect())
    }

    pub fn from_rationals(c: Vec<Rational>) -> QPoly {
        QPoly::from_vec(&Rationals, c)
    }

    pub fn to_string_q(&self) -> String {
        self.render(&Rationals, "T")
    }
}

/// Ordering used wherever a deterministic order of polynomials is needed:
/// by degree, then coefficients from the top down.
pub fn canonical_cmp(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    const Q: Rationals = Rationals;

    #[test]
    fn multiplication_examples() {
        let a = QPoly::from_ints(&[1, 1]);
        let b = QPoly::from_ints(&[-1, 1]);
        assert_eq!(a.mul(&Q, &b), QPoly::from_ints(&[-1, 0, 1]));
        assert!(QPoly::zero().mul(&Q, &a).is_zero());
        let c = QPoly::from_ints(&[1, 0, 1]);
        assert_eq!(c.mul(&Q, &c), QPoly::from_ints(&[1, 0, 2, 0, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let f = QPoly::from_ints(&[-1, 0, 0, 1]);
        let g = QPoly::from_ints(&[-1, 0, 1]);
        let (q, r) = f.divrem(&Q, &g);
        assert_eq!(q.mul(&Q, &g).add(&Q, &r), f);
        assert_eq!(f.gcd(&Q, &g), QPoly::from_ints(&[-1, 1]));
        let (h, s, t) = f.xgcd(&Q, &g);
        assert_eq!(s.mul(&Q, &f).add(&Q, &t.mul(&Q, &g)), h);
    }

    #[test]
    fn yun() {
        // (T^2+1)^2 (T-3)
        let f = QPoly::from_ints(&[1, 0, 1]).pow(&Q, 2).mul(&Q, &QPoly::from_ints(&[-3, 1]));
        let sf = f.squarefree_decomposition(&Q);
        assert_eq!(sf, vec![(QPoly::from_ints(&[-3, 1]), 1), (QPoly::from_ints(&[1, 0, 1]), 2)]);
    }

    #[test]
    fn render_and_eval() {
        let f = QPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(f.to_string_q(), "T^2 - 2");
        assert_eq!(f.eval(&Q, &rat(3)), rat(7));
        let g = QPoly::from_ints(&[1, 1]);
        assert_eq!(f.compose(&Q, &g), QPoly::from_ints(&[-1, 2, 1]));
    }
}
