//! Factorization over Q: squarefree decomposition, modular factorization at a
//! well-chosen small prime, quadratic Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Rationals;
use super::modp::{Fp, PrimeField};
use super::poly::{canonical_cmp, QPoly};
use super::rational::Rational;
use crate::error::{Error, Result};

/// `lead * prod f_i^{e_i}` with monic, pairwise distinct irreducible `f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub lead: Rational,
    pub factors: Vec<(QPoly, usize)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self) -> QPoly {
        let k = Rationals;
        self.factors
            .iter()
            .fold(QPoly::constant(&k, self.lead.clone()), |acc, (f, e)| acc.mul(&k, &f.pow(&k, *e)))
    }
}

type ZPoly = Vec<BigInt>;

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Number of admissible primes compared before picking the one with fewest factors.
const PRIME_TRIALS: usize = 5;

pub fn factor_over_q(p: &QPoly, cap: usize) -> Result<Factorization> {
    let Some(deg) = p.degree() else {
        return Err(Error::Malformed("cannot factor the zero polynomial".into()));
    };
    if deg > cap {
        return Err(Error::CapExceeded { what: "degree for factorization over Q", value: deg, cap });
    }
    let k = Rationals;
    let lead = p.lead().unwrap().clone();
    let mut factors = Vec::new();
    for (a, e) in p.squarefree_decomposition(&k) {
        for f in factor_squarefree(&a) {
            factors.push((f, e));
        }
    }
    factors.sort_by(|x, y| canonical_cmp(&x.0, &y.0).then(x.1.cmp(&y.1)));
    Ok(Factorization { lead, factors })
}

/// Monic irreducible factors of a squarefree polynomial, sorted canonically.
pub fn factor_squarefree(f: &QPoly) -> Vec<QPoly> {
    let k = Rationals;
    if f.deg() <= 1 {
        return vec![f.monic(&k)];
    }
    let (z, c) = monic_integer_model(f);
    let mut out: Vec<QPoly> = zassenhaus(&z)
        .into_iter()
        .map(|h| {
            // h(c x), made monic over Q.
            let mut scale = Rational::one();
            let cq = Rational::from_integer(c.clone());
            let coeffs = h
                .iter()
                .map(|a| {
                    let v = Rational::from_integer(a.clone()) * &scale;
                    scale = &scale * &cq;
                    v
                })
                .collect();
            QPoly::from_rationals(coeffs).monic(&k)
        })
        .collect();
    out.sort_by(canonical_cmp);
    out
}

pub fn is_irreducible_over_q(f: &QPoly, cap: usize) -> Result<bool> {
    let fz = factor_over_q(f, cap)?;
    Ok(fz.factors.len() == 1 && fz.factors[0].1 == 1)
}

/// Returns `(G, c)` with `G` monic in `Z[y]` and `f(x)` proportional to `G(c x)`.
fn monic_integer_model(f: &QPoly) -> (ZPoly, BigInt) {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut z: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let content = z.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in z.iter_mut() {
        *c = &*c / &content;
    }
    if z.last().unwrap().is_negative() {
        for c in z.iter_mut() {
            *c = -&*c;
        }
    }
    let n = z.len() - 1;
    let lc = z[n].clone();
    let mut pow = BigInt::one();
    for i in (0..n).rev() {
        z[i] = &z[i] * &pow;
        pow *= &lc;
    }
    z[n] = BigInt::one();
    (z, lc)
}

fn reduce_mod(k: &PrimeField, z: &ZPoly) -> Fp {
    let p = BigInt::from(k.p);
    let mut v: Fp = z.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Factors a monic squarefree integer polynomial into monic irreducibles.
fn zassenhaus(g: &ZPoly) -> Vec<ZPoly> {
    let n = g.len() - 1;
    if n == 1 {
        return vec![g.clone()];
    }
    // Choose the prime with the fewest modular factors among the first admissible ones.
    let mut best: Option<(usize, PrimeField, Fp)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let k = PrimeField::new(p);
        let gm = reduce_mod(&k, g);
        if gm.len() != g.len() || !k.is_squarefree(&gm) {
            continue;
        }
        let count = k.count_factors(&gm);
        if best.as_ref().is_none_or(|b| count < b.0) {
            best = Some((count, k, gm));
        }
        tried += 1;
        if count == 1 || tried >= PRIME_TRIALS {
            break;
        }
    }
    let (count, k, gm) = best.expect("no admissible prime below 180 for a squarefree input");
    if count == 1 {
        return vec![g.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ k.p);
    let modular = k.factor_squarefree(&gm, &mut rng);

    // Lift to p^(2^j) above twice the Mignotte-type coefficient bound.
    let norm2: BigInt = g.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (BigInt::one() << (n + 1)) * norm2;
    let p = BigInt::from(k.p);
    let mut modulus = p.clone();
    let mut steps = 0;
    while modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = multifactor_lift(&k, g, &modular, steps, &modulus);
    recombine(g, lifted, &modulus)
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut v: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
        })
        .collect()
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()
        })
        .collect()
}

/// Division by a monic `d` modulo `m`.
fn zdivrem_monic(a: &ZPoly, d: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let dd = d.len() - 1;
    let mut r = zmod(a, m);
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, y) in d.iter().enumerate() {
            r[i + j] = (&r[i + j] - &c * y).mod_floor(m);
        }
        q[i] = c;
    }
    r.truncate(dd);
    (zmod(&q, m), zmod(&r, m))
}

fn lift_fp(v: &Fp) -> ZPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` modulo `m` to modulo `m^2`.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g1 = zmod(&zadd(g, &zadd(&zmul(t, &e), &zmul(&q, g))), &m2);
    let h1 = zmod(&zadd(h, &r), &m2);
    let b = zmod(
        &zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &vec![BigInt::one()]),
        &m2,
    );
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h1, &m2);
    let s1 = zmod(&zsub(s, &d), &m2);
    let t1 = zmod(&zsub(t, &zadd(&zmul(t, &b), &zmul(&c, &g1))), &m2);
    (g1, h1, s1, t1)
}

fn multifactor_lift(
    k: &PrimeField,
    f: &ZPoly,
    factors: &[Fp],
    steps: usize,
    modulus: &BigInt,
) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![zmod(f, modulus)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let g0 = left.iter().fold(vec![1u64], |a, b| k.mul(&a, b));
    let h0 = right.iter().fold(vec![1u64], |a, b| k.mul(&a, b));
    let (one, s0, t0) = k.xgcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&g0), lift_fp(&h0), lift_fp(&s0), lift_fp(&t0));
    let mut m = BigInt::from(k.p);
    for _ in 0..steps {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = multifactor_lift(k, &g, left, steps, modulus);
    out.extend(multifactor_lift(k, &h, right, steps, modulus));
    out
}

fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut v: ZPoly = a
        .iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Exact division over Z by a monic divisor.
fn zdiv_exact(a: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let dd = d.len() - 1;
    if a.len() <= dd {
        return None;
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, y) in d.iter().enumerate() {
            r[i + j] -= &c * y;
        }
        q[i] = c;
    }
    r[..dd].iter().all(|c| c.is_zero()).then_some(q)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let s = idx.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if idx[i] < n - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn recombine(g: &ZPoly, mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut f = g.clone();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let prod = idx.iter().fold(vec![BigInt::one()], |acc, &i| zmod(&zmul(&acc, &lifted[i]), m));
            let cand = symmetric(&prod, m);
            let const_ok = if f[0].is_zero() {
                true
            } else {
                !cand[0].is_zero() && (&f[0] % &cand[0]).is_zero()
            };
            if const_ok {
                if let Some(q) = zdiv_exact(&f, &cand) {
                    out.push(cand);
                    f = q;
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        s += 1;
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

/// Squarefree decomposition made public for callers that only need it over Q.
pub fn squarefree_part(p: &QPoly) -> QPoly {
    let k = Rationals;
    p.squarefree_decomposition(&k)
        .into_iter()
        .fold(QPoly::one(&k), |acc, (a, _)| acc.mul(&k, &a))
}
