//! Certified isolation of all complex roots of a squarefree rational polynomial.
//!
//! Approximations come from a floating-point Aberth iteration and are then
//! polished by exact Weierstrass (Durand-Kerner) steps on dyadic rationals.
//! For monic `p` and distinct `z_i`, `p` is the characteristic polynomial of
//! `diag(z) - W 1^T` with Weierstrass corrections `W_i`, so Gerschgorin discs
//! around `z_i - W_i` of radius `(n-1)|W_i|` certify one root each once they
//! are pairwise disjoint. Real roots are then refined by bisection.
//!
//! Roots are labelled by the order of their certified centres; the labelling is
//! a deterministic function of the polynomial and is memoized.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::field::Rationals;
use super::interval::{Interval, Rect};
use super::poly::QPoly;
use super::rational::{from_f64, round_dyadic, to_f64, Rational};
use crate::error::{Error, Result};

const MAX_BITS: u32 = 1 << 14;

type C = (Rational, Rational);

fn csub(a: &C, b: &C) -> C {
    (&a.0 - &b.0, &a.1 - &b.1)
}
fn cmul(a: &C, b: &C) -> C {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}
fn cdiv(a: &C, b: &C) -> C {
    let n = &b.0 * &b.0 + &b.1 * &b.1;
    ((&a.0 * &b.0 + &a.1 * &b.1) / &n, (&a.1 * &b.0 - &a.0 * &b.1) / &n)
}
fn cround(a: &C, bits: u32) -> C {
    (round_dyadic(&a.0, bits), round_dyadic(&a.1, bits))
}
fn l1(a: &C) -> Rational {
    a.0.abs() + a.1.abs()
}

/// Rough `-log2 |q|`, saturating.
fn neg_log2(q: &Rational) -> i64 {
    if q.is_zero() {
        return i64::MAX / 4;
    }
    q.denom().bits() as i64 - q.numer().bits() as i64
}

#[derive(Debug, Clone)]
struct RootData {
    /// Monic version of the polynomial.
    monic: QPoly,
    /// Certified rectangles in label order, at the coarsest certification.
    base: Vec<Rect>,
    /// Best rectangles so far, in label order.
    best: Vec<Rect>,
    /// Current approximations, in label order (used for complex roots).
    approx: Vec<C>,
    bits: u32,
}

fn cache() -> &'static Mutex<HashMap<QPoly, RootData>> {
    static CACHE: OnceLock<Mutex<HashMap<QPoly, RootData>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn aberth_f64(p: &QPoly) -> Vec<Complex64> {
    let n = p.deg();
    let c: Vec<Complex64> = p.coeffs().iter().map(|q| Complex64::new(to_f64(q), 0.0)).collect();
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let bound = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.5 * bound.min(1e6), th)
        })
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::zero();
        let mut d = Complex64::zero();
        for a in c.iter().rev() {
            d = d * x + v;
            v = v * x + a;
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::one() - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn eval_c(p: &QPoly, z: &C) -> C {
    let mut acc = (Rational::zero(), Rational::zero());
    for c in p.coeffs().iter().rev() {
        acc = cmul(&acc, z);
        acc.0 += c;
    }
    acc
}

fn weierstrass(p: &QPoly, z: &[C]) -> Option<Vec<C>> {
    let n = z.len();
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let mut den = (Rational::one(), Rational::zero());
        for j in 0..n {
            if j != i {
                let d = csub(&z[i], &z[j]);
                if d.0.is_zero() && d.1.is_zero() {
                    return None;
                }
                den = cmul(&den, &d);
            }
        }
        w.push(cdiv(&eval_c(p, &z[i]), &den));
    }
    Some(w)
}

/// Gerschgorin squares; `None` unless pairwise disjoint.
fn certify(z: &[C], w: &[C]) -> Option<Vec<Rect>> {
    let n = z.len();
    let nm1 = Rational::from_integer(((n - 1) as i64).into());
    let sq: Vec<Rect> = z
        .iter()
        .zip(w)
        .map(|(zi, wi)| {
            let c = csub(zi, wi);
            Rect::square(&c.0, &c.1, &(&nm1 * l1(wi)))
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if sq[i].intersects(&sq[j]) {
                return None;
            }
        }
    }
    Some(sq)
}

/// Squares straddling the real axis whose mirror meets no other square hold a real root.
fn symmetrize(sq: &mut [Rect]) -> bool {
    let n = sq.len();
    for i in 0..n {
        if !sq[i].im.contains_zero() {
            continue;
        }
        let mirror = sq[i].conj();
        if (0..n).any(|j| j != i && mirror.intersects(&sq[j])) {
            return false;
        }
        sq[i] = Rect::new(sq[i].re.clone(), Interval::zero());
    }
    true
}

/// Runs Weierstrass steps from `z` until all roots are certified with width at most `2^-target`.
fn polish(p: &QPoly, mut z: Vec<C>, target: u32) -> Result<(Vec<C>, Vec<Rect>)> {
    let n = z.len();
    let mut bits: u32 = 64;
    for _ in 0..400 {
        let w = match weierstrass(p, &z) {
            Some(w) => w,
            None => {
                // Coincident approximations: nudge deterministically.
                for (i, zi) in z.iter_mut().enumerate() {
                    let eps = Rational::new(((i + 1) as i64).into(), num_bigint::BigInt::one() << bits);
                    *zi = (&zi.0 + &eps, &zi.1 + &eps);
                }
                continue;
            }
        };
        if let Some(mut sq) = certify(&z, &w) {
            let small = sq.iter().all(|s| neg_log2(&s.width()) > target as i64);
            if symmetrize(&mut sq) && small {
                let z1 = z.iter().zip(&w).map(|(a, b)| csub(a, b)).collect();
                return Ok((z1, sq));
            }
        }
        let acc = w.iter().map(|wi| neg_log2(&l1(wi))).min().unwrap_or(0).max(0) as u32;
        bits = bits.max((2 * acc + 32).min(MAX_BITS)).max(target + 16);
        if bits > MAX_BITS {
            break;
        }
        z = (0..n).map(|i| cround(&csub(&z[i], &w[i]), bits)).collect();
    }
    Err(Error::Isolation(format!("could not certify roots of {}", p.to_string_q())))
}

fn compute(p: &QPoly) -> Result<RootData> {
    let k = Rationals;
    let monic = p.monic(&k);
    let n = monic.deg();
    if n == 0 {
        return Err(Error::Malformed("constant polynomial has no roots".into()));
    }
    if n == 1 {
        let r = -monic.coeffs()[0].clone();
        let rect = Rect::real(r.clone());
        return Ok(RootData {
            monic,
            base: vec![rect.clone()],
            best: vec![rect],
            approx: vec![(r, Rational::zero())],
            bits: MAX_BITS,
        });
    }
    if !monic.is_squarefree(&k) {
        return Err(Error::Malformed(format!("{} is not squarefree", monic.to_string_q())));
    }
    let start: Vec<C> = aberth_f64(&monic)
        .into_iter()
        .map(|c| {
            let re = if c.re.is_finite() { c.re } else { 1.0 };
            let im = if c.im.is_finite() { c.im } else { 1.0 };
            (from_f64(re, 52), from_f64(im, 52))
        })
        .collect();
    let (z, sq) = polish(&monic, start, 8)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let ca = sq[a].center();
        let cb = sq[b].center();
        ca.0.cmp(&cb.0).then(ca.1.cmp(&cb.1))
    });
    let base: Vec<Rect> = order.iter().map(|&i| sq[i].clone()).collect();
    let approx = order.iter().map(|&i| z[i].clone()).collect();
    Ok(RootData { monic, best: base.clone(), base, approx, bits: 8 })
}

fn with_data<T>(p: &QPoly, f: impl FnOnce(&mut RootData) -> Result<T>) -> Result<T> {
    let key = p.monic(&Rationals);
    let mut guard = cache().lock().unwrap_or_else(|e| e.into_inner());
    if !guard.contains_key(&key) {
        let d = compute(&key)?;
        guard.insert(key.clone(), d);
    }
    f(guard.get_mut(&key).unwrap())
}

/// Certified disjoint rectangles, one per root, in canonical label order.
pub fn isolate(p: &QPoly) -> Result<Vec<Rect>> {
    with_data(p, |d| Ok(d.base.clone()))
}

pub fn root_count(p: &QPoly) -> usize {
    p.deg()
}

fn bisect_real(p: &QPoly, iv: &Interval, target: u32) -> Interval {
    let k = Rationals;
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let mut slo = p.eval(&k, &lo).signum();
    if slo.is_zero() {
        return Interval::point(lo);
    }
    let goal = Rational::new(1.into(), num_bigint::BigInt::one() << target);
    while &hi - &lo > goal {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        let s = p.eval(&k, &mid).signum();
        if s.is_zero() {
            return Interval::point(mid);
        }
        if s == slo {
            lo = mid;
            slo = s;
        } else {
            hi = mid;
        }
    }
    Interval::new(lo, hi)
}

/// Rectangle of width at most `2^-bits` around root `index`.
pub fn root_rect(p: &QPoly, index: usize, bits: u32) -> Result<Rect> {
    with_data(p, |d| {
        if index >= d.base.len() {
            return Err(Error::Isolation(format!("root index {index} out of range")));
        }
        if neg_log2(&d.best[index].width()) >= bits as i64 {
            return Ok(d.best[index].clone());
        }
        if d.base[index].is_real() {
            let re = bisect_real(&d.monic, &d.best[index].re, bits);
            d.best[index] = Rect::new(re, Interval::zero());
            return Ok(d.best[index].clone());
        }
        refine_all(d, bits)?;
        Ok(d.best[index].clone())
    })
}

fn refine_all(d: &mut RootData, bits: u32) -> Result<()> {
    let mut target = bits;
    loop {
        let (z, sq) = polish(&d.monic, d.approx.clone(), target)?;
        let labelled = (0..sq.len()).all(|k| {
            sq[k].intersects(&d.base[k])
                && (0..sq.len()).all(|j| j == k || !sq[k].intersects(&d.base[j]))
        });
        if labelled {
            for (k, s) in sq.into_iter().enumerate() {
                // Keep real roots on the axis even if this pass used a wider square.
                if !d.base[k].is_real() {
                    d.best[k] = s;
                }
            }
            d.approx = z;
            d.bits = d.bits.max(bits);
            return Ok(());
        }
        target += 8;
        if target > MAX_BITS {
            return Err(Error::Isolation("refinement did not stabilise labels".into()));
        }
    }
}

/// Real-root indicator for the labelled root.
pub fn is_real_root(p: &QPoly, index: usize) -> Result<bool> {
    with_data(p, |d| Ok(d.base[index].is_real()))
}
