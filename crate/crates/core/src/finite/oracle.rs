//! Brute-force convolution in the full function space on `G`, used to
//! cross-check the coset formula.

use crate::arith::rational::{rat, Rational};
use crate::error::{Error, Result};

use super::group::FiniteGroup;
use super::hecke::{DoubleCosetBasis, HaarMeasure};

/// `(f ⋆ g)(z) = sum_t f(z t^-1) g(t) * point_mass`.
pub fn convolve(g: &FiniteGroup, measure: &HaarMeasure, f: &[Rational], h: &[Rational]) -> Vec<Rational> {
    let n = g.order();
    let mut out = vec![rat(0); n];
    for (t, ht) in h.iter().enumerate() {
        if ht == &rat(0) {
            continue;
        }
        let ti = g.inv(t);
        for (z, o) in out.iter_mut().enumerate() {
            let fz = &f[g.mul(z, ti)];
            if fz != &rat(0) {
                *o += fz * ht;
            }
        }
    }
    out.into_iter().map(|v| v * &measure.point_mass).collect()
}

pub fn indicator(n: usize, set: &[usize]) -> Vec<Rational> {
    let mut v = vec![rat(0); n];
    for &x in set {
        v[x] = rat(1);
    }
    v
}

/// Structure constants by convolving indicator functions of double cosets.
/// Fails if a product is not `L`-bi-invariant.
pub fn brute_force_constants(
    g: &FiniteGroup,
    dc: &DoubleCosetBasis,
    measure: &HaarMeasure,
) -> Result<Vec<Vec<Vec<(usize, Rational)>>>> {
    let n = g.order();
    let d = dc.len();
    let ind: Vec<Vec<Rational>> = dc.members.iter().map(|m| indicator(n, m)).collect();
    let mut out = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let prod = convolve(g, measure, &ind[i], &ind[j]);
            for z in 0..n {
                if prod[z] != prod[dc.reps[dc.index_of[z]]] {
                    return Err(Error::Mismatch(format!("product ({i}, {j}) is not bi-invariant at {z}")));
                }
            }
            for k in 0..d {
                let c = &prod[dc.reps[k]];
                if c != &rat(0) {
                    out[i][j].push((k, c.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Direct count behind a single coset convolution value:
/// `(1_{xL} ⋆ 1_{yL})(z) = point_mass * #{l ∈ L : x^-1 z l^-1 y^-1 ∈ L}`.
pub fn coset_convolution_value(g: &FiniteGroup, dc: &DoubleCosetBasis, measure: &HaarMeasure, x: usize, y: usize, z: usize) -> Rational {
    let l = &dc.subgroup;
    let xz = g.mul(g.inv(x), z);
    let yi = g.inv(y);
    let count = l
        .elements()
        .iter()
        .filter(|&&m| l.contains(g.mul(g.mul(xz, g.inv(m)), yi)))
        .count();
    measure.volume(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::group::{corpus, Subgroup};
    use crate::finite::hecke::{double_cosets, hecke_constants};

    #[test]
    fn s4_klein_oracle() {
        let g = corpus::symmetric(4);
        let a = (0..24).find(|&x| g.label(x) == "(0 1)").unwrap();
        let b = (0..24).find(|&x| g.label(x) == "(2 3)").unwrap();
        let l = Subgroup::generated(&g, &[a, b]).unwrap();
        let dc = double_cosets(&g, &l);
        let m = HaarMeasure::normalized_on(&l);
        assert_eq!(hecke_constants(&g, &dc, &m), brute_force_constants(&g, &dc, &m).unwrap());
    }
}
