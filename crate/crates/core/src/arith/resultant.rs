//! Resultants and interpolation, the building blocks of norm computations.

use super::field::{Field, Rationals};
use super::poly::{Poly, QPoly};
use super::rational::Rational;

/// Resultant of `a` and `b` by the Euclidean remainder sequence.
pub fn resultant<F: Field>(k: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
    if a.is_zero() || b.is_zero() {
        return k.zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = k.one();
    loop {
        let m = a.deg();
        let n = b.deg();
        if n == 0 {
            return k.mul(&acc, &k.pow(b.lead().unwrap(), m as u64));
        }
        if m == 0 {
            return k.mul(&acc, &k.pow(a.lead().unwrap(), n as u64));
        }
        let r = a.rem(k, &b);
        if r.is_zero() {
            return k.zero();
        }
        if (m * n) % 2 == 1 {
            acc = k.neg(&acc);
        }
        acc = k.mul(&acc, &k.pow(b.lead().unwrap(), (m - r.deg()) as u64));
        a = b;
        b = r;
    }
}

/// The unique polynomial of degree `< points.len()` through the given points.
pub fn interpolate(points: &[(Rational, Rational)]) -> QPoly {
    let k = Rationals;
    // Newton divided differences.
    let n = points.len();
    let mut coef: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&points[i].0 - &points[i - j].0);
        }
    }
    let mut out = QPoly::zero();
    for i in (0..n).rev() {
        let lin = QPoly::from_rationals(vec![-points[i].0.clone(), Rational::from_integer(1.into())]);
        out = out.mul(&k, &lin).add(&k, &QPoly::constant(&k, coef[i].clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn resultant_of_linear_factors() {
        // Res(T^2-2, T-1) = (1-2)... = f(1) up to sign: -1
        let a = QPoly::from_ints(&[-2, 0, 1]);
        let b = QPoly::from_ints(&[-1, 1]);
        assert_eq!(resultant(&Rationals, &a, &b), rat(-1));
        // common root gives zero
        let c = QPoly::from_ints(&[2, -3, 1]);
        assert_eq!(resultant(&Rationals, &c, &b), rat(0));
    }

    #[test]
    fn interpolation_round_trip() {
        let f = QPoly::from_ints(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..4).map(|i| (rat(i), f.eval(&Rationals, &rat(i)))).collect();
        assert_eq!(interpolate(&pts), f);
    }
}
