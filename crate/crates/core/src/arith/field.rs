//! The coefficient-field abstraction used by polynomials, matrices and algebras.
//!
//! Fields are passed explicitly as context objects; elements are plain values.

use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};

pub trait Field: Clone + Debug {
    type Elem: Clone + Debug + PartialEq + Eq + Hash;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Absolute degree over Q.
    fn degree(&self) -> usize;
    fn render(&self, a: &Self::Elem) -> String;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&Rational::from_integer(n.into()))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The field Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn degree(&self) -> usize {
        1
    }
    fn render(&self, a: &Rational) -> String {
        format_rational(a)
    }
}
