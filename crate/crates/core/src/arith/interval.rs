//! Closed rational intervals and complex rectangles with outward rounding.

use num_traits::{Signed, Zero};

use super::poly::QPoly;
use super::rational::{ceil_dyadic, floor_dyadic, format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(q: Rational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    pub fn around(c: &Rational, r: &Rational) -> Self {
        Interval { lo: c - r, hi: c + r }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn subset_of(&self, o: &Interval) -> bool {
        o.lo <= self.lo && self.hi <= o.hi
    }

    pub fn intersects(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &Rational) -> Interval {
        self.mul(&Interval::point(q.clone()))
    }

    pub fn sqr(&self) -> Interval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.contains_zero() {
            Interval { lo: Rational::zero(), hi: a.max(b) }
        } else {
            Interval { lo: a.clone().min(b.clone()), hi: a.max(b) }
        }
    }

    /// `None` when the interval contains zero.
    pub fn inv(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn round_out(&self, bits: u32) -> Interval {
        if self.is_point() && self.lo.denom().bits() <= bits as u64 + 1 {
            return self.clone();
        }
        Interval { lo: floor_dyadic(&self.lo, bits), hi: ceil_dyadic(&self.hi, bits) }
    }

    pub fn abs_max(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }
}

/// Axis-parallel rectangle `re x im` in the complex plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    pub re: Interval,
    pub im: Interval,
}

impl Rect {
    pub fn new(re: Interval, im: Interval) -> Self {
        Rect { re, im }
    }

    pub fn point(re: Rational, im: Rational) -> Self {
        Rect { re: Interval::point(re), im: Interval::point(im) }
    }

    pub fn real(q: Rational) -> Self {
        Self::point(q, Rational::zero())
    }

    /// Square of half-width `r` centred at `(re, im)`.
    pub fn square(re: &Rational, im: &Rational, r: &Rational) -> Self {
        Rect { re: Interval::around(re, r), im: Interval::around(im, r) }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_point() && self.im.lo.is_zero()
    }

    pub fn width(&self) -> Rational {
        self.re.width().max(self.im.width())
    }

    pub fn center(&self) -> (Rational, Rational) {
        (self.re.mid(), self.im.mid())
    }

    pub fn intersects(&self, o: &Rect) -> bool {
        self.re.intersects(&o.re) && self.im.intersects(&o.im)
    }

    pub fn subset_of(&self, o: &Rect) -> bool {
        self.re.subset_of(&o.re) && self.im.subset_of(&o.im)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn conj(&self) -> Rect {
        Rect { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn add(&self, o: &Rect) -> Rect {
        Rect { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Rect) -> Rect {
        Rect { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Rect {
        Rect { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Rect) -> Rect {
        if self.is_real() && o.is_real() {
            return Rect { re: self.re.mul(&o.re), im: Interval::zero() };
        }
        Rect {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, q: &Rational) -> Rect {
        Rect { re: self.re.scale(q), im: self.im.scale(q) }
    }

    /// `None` when the rectangle may contain zero.
    pub fn inv(&self) -> Option<Rect> {
        if self.is_real() {
            return self.re.inv().map(|re| Rect { re, im: Interval::zero() });
        }
        let n = self.re.sqr().add(&self.im.sqr());
        let ni = n.inv()?;
        Some(Rect { re: self.re.mul(&ni), im: self.im.neg().mul(&ni) })
    }

    pub fn round_out(&self, bits: u32) -> Rect {
        Rect { re: self.re.round_out(bits), im: self.im.round_out(bits) }
    }

    /// Horner evaluation of a rational polynomial.
    pub fn eval_poly(p: &QPoly, z: &Rect, bits: u32) -> Rect {
        let mut acc = Rect::real(Rational::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(z).add(&Rect::real(c.clone())).round_out(bits);
        }
        acc
    }

    pub fn pow(&self, e: u32, bits: u32) -> Rect {
        let mut acc = Rect::real(Rational::from_integer(1.into()));
        for _ in 0..e {
            acc = acc.mul(self).round_out(bits);
        }
        acc
    }

    pub fn describe(&self) -> String {
        format!(
            "[{}, {}] x [{}, {}]",
            format_rational(&self.re.lo),
            format_rational(&self.re.hi),
            format_rational(&self.im.lo),
            format_rational(&self.im.hi)
        )
    }
}
