//! Polynomials over a small prime field F_p, used by the modular stage of factorization.

use num_bigint::BigUint;
use rand::Rng;

/// Coefficients in `[0, p)`, lowest degree first, no trailing zeros.
pub type Fp = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        PrimeField { p }
    }

    fn trim(mut a: Fp) -> Fp {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv_scalar(&self, a: u64) -> u64 {
        self.pow_scalar(a, self.p - 2)
    }

    fn pow_scalar(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        acc
    }

    pub fn reduce(&self, c: &[i64]) -> Fp {
        let p = self.p as i64;
        Self::trim(c.iter().map(|&x| x.rem_euclid(p) as u64).collect())
    }

    pub fn add(&self, a: &Fp, b: &Fp) -> Fp {
        let n = a.len().max(b.len());
        Self::trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        let n = a.len().max(b.len());
        Self::trim(
            (0..n)
                .map(|i| {
                    (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0))
                        % self.p
                })
                .collect(),
        )
    }

    pub fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        Self::trim(out)
    }

    pub fn scale(&self, a: &Fp, c: u64) -> Fp {
        Self::trim(a.iter().map(|&x| x * c % self.p).collect())
    }

    pub fn divrem(&self, a: &Fp, d: &Fp) -> (Fp, Fp) {
        let dd = d.len() - 1;
        if a.len() <= dd {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv_scalar(d[dd]);
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd] * inv % self.p;
            if c == 0 {
                continue;
            }
            for (j, &y) in d.iter().enumerate() {
                r[i + j] = (r[i + j] + self.p - c * y % self.p) % self.p;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::trim(q), Self::trim(r))
    }

    pub fn rem(&self, a: &Fp, d: &Fp) -> Fp {
        self.divrem(a, d).1
    }

    pub fn monic(&self, a: &Fp) -> Fp {
        match a.last() {
            None => Vec::new(),
            Some(&c) => self.scale(a, self.inv_scalar(c)),
        }
    }

    pub fn gcd(&self, a: &Fp, b: &Fp) -> Fp {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn xgcd(&self, a: &Fp, b: &Fp) -> (Fp, Fp, Fp) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv_scalar(*r0.last().unwrap());
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &Fp) -> Fp {
        Self::trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| (i as u64 % self.p) * c % self.p)
                .collect(),
        )
    }

    pub fn pow_mod(&self, a: &Fp, e: &BigUint, m: &Fp) -> Fp {
        let mut acc = vec![1u64];
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self, a: &Fp) -> bool {
        self.gcd(a, &self.derivative(a)).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g_d, d)` where `g_d` is the product of all degree-`d` factors.
    pub fn ddf(&self, f: &Fp) -> Vec<(Fp, usize)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest.clone(), deg));
                break;
            }
            h = self.pow_mod(&h, &p, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Equal-degree splitting (Cantor-Zassenhaus) of a monic product of degree-`d` factors.
    pub fn edf<R: Rng>(&self, f: &Fp, d: usize, rng: &mut R) -> Vec<Fp> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Fp = Self::trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let g = self.gcd(&a, f);
            let split = if g.len() > 1 {
                g
            } else {
                let b = self.sub(&self.pow_mod(&a, &e, f), &vec![1]);
                self.gcd(&b, f)
            };
            if split.len() > 1 && split.len() < f.len() {
                let other = self.divrem(f, &split).0;
                let mut out = self.edf(&split, d, rng);
                out.extend(self.edf(&self.monic(&other), d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic irreducibles.
    pub fn factor_squarefree<R: Rng>(&self, f: &Fp, rng: &mut R) -> Vec<Fp> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out.sort();
        out
    }

    /// Number of irreducible factors, from the distinct-degree split alone.
    pub fn count_factors(&self, f: &Fp) -> usize {
        self.ddf(f).iter().map(|(g, d)| (g.len() - 1) / d).sum()
    }
}
