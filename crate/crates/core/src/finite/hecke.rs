//! Double cosets, coset convolution and Hecke algebras `H(G, L, A)` of finite groups.

use std::sync::Arc;

use crate::algebra::FinDimAlgebra;
use crate::arith::field::Field;
use crate::arith::rational::{rat, Rational};

use super::group::{FiniteGroup, Subgroup};

/// Haar measure on a finite group: every point has mass `1/|L_ref|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaarMeasure {
    pub reference: Subgroup,
    pub point_mass: Rational,
}

impl HaarMeasure {
    pub fn normalized_on(l: &Subgroup) -> Self {
        HaarMeasure { reference: l.clone(), point_mass: Rational::new(1.into(), l.order().into()) }
    }

    pub fn volume(&self, count: usize) -> Rational {
        &self.point_mass * rat(count as i64)
    }

    pub fn volume_of(&self, l: &Subgroup) -> Rational {
        self.volume(l.order())
    }
}

/// Left cosets `xL`, each represented by its smallest member.
#[derive(Debug, Clone)]
pub struct LeftCosets {
    pub reps: Vec<usize>,
    /// Position in `reps` of the coset containing each element.
    pub index_of: Vec<usize>,
}

impl LeftCosets {
    pub fn new(g: &FiniteGroup, l: &Subgroup) -> Self {
        let n = g.order();
        let mut index_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if index_of[x] != usize::MAX {
                continue;
            }
            for &m in l.elements() {
                index_of[g.mul(x, m)] = reps.len();
            }
            reps.push(x);
        }
        LeftCosets { reps, index_of }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Double cosets `LxL` with minimal-index representatives, in increasing order
/// of representative (so the identity coset `L` comes first).
#[derive(Debug, Clone)]
pub struct DoubleCosetBasis {
    pub subgroup: Subgroup,
    pub reps: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    /// Double coset index of each element.
    pub index_of: Vec<usize>,
    /// Left coset representatives `aL` contained in each double coset.
    pub left_cosets: Vec<Vec<usize>>,
    pub cosets: LeftCosets,
}

pub fn double_cosets(g: &FiniteGroup, l: &Subgroup) -> DoubleCosetBasis {
    let n = g.order();
    let mut index_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut members = Vec::new();
    for x in 0..n {
        if index_of[x] != usize::MAX {
            continue;
        }
        let mut m = Vec::new();
        for &a in l.elements() {
            for &b in l.elements() {
                let y = g.mul(g.mul(a, x), b);
                if index_of[y] == usize::MAX {
                    index_of[y] = reps.len();
                    m.push(y);
                }
            }
        }
        m.sort_unstable();
        reps.push(x);
        members.push(m);
    }
    let cosets = LeftCosets::new(g, l);
    let mut left_cosets = vec![Vec::new(); reps.len()];
    for &r in &cosets.reps {
        left_cosets[index_of[r]].push(r);
    }
    DoubleCosetBasis { subgroup: l.clone(), reps, members, index_of, left_cosets, cosets }
}

impl DoubleCosetBasis {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// One term `M(x, y, z) * vol(L ∩ yLy^-1) * 1_{zL}` of a coset convolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTerm {
    pub z: usize,
    pub m: u8,
    pub coeff: Rational,
}

/// `M(x, y, z)`: 1 when `x^-1 z ∈ LyL`, else 0.
pub fn m_xyz(g: &FiniteGroup, dc: &DoubleCosetBasis, x: usize, y: usize, z: usize) -> u8 {
    u8::from(dc.index_of[g.mul(g.inv(x), z)] == dc.index_of[y])
}

/// `1_{xL} ⋆ 1_{yL} = sum_z M(x, y, z) vol(L ∩ yLy^-1) 1_{zL}`, one term per left
/// coset in the support (ordered by representative).
pub fn convolve_cosets(
    g: &FiniteGroup,
    dc: &DoubleCosetBasis,
    measure: &HaarMeasure,
    x: usize,
    y: usize,
) -> Vec<CosetTerm> {
    let vol = measure.volume(dc.subgroup.conjugate_intersection(g, y));
    dc.cosets
        .reps
        .iter()
        .filter_map(|&z| {
            let m = m_xyz(g, dc, x, y, z);
            (m == 1).then(|| CosetTerm { z, m, coeff: vol.clone() })
        })
        .collect()
}

/// `H(G, L, A)` with basis `1_{Lx_iL}`.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra<F: Field> {
    pub group: Arc<FiniteGroup>,
    pub basis: DoubleCosetBasis,
    pub measure: HaarMeasure,
    /// Structure constants over Q (they are always rational).
    pub rational: Arc<FinDimAlgebra<crate::arith::field::Rationals>>,
    pub algebra: Arc<FinDimAlgebra<F>>,
}

/// Structure constants from the coset formula: for each pair of left cosets
/// `aL ⊂ Lx_iL`, `bL ⊂ Lx_jL`, add the coefficient of `1_{x_k L}` in `1_{aL} ⋆ 1_{bL}`.
pub fn hecke_constants(g: &FiniteGroup, dc: &DoubleCosetBasis, measure: &HaarMeasure) -> Vec<Vec<Vec<(usize, Rational)>>> {
    let d = dc.len();
    let mut out = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let vol = measure.volume(dc.subgroup.conjugate_intersection(g, dc.reps[j]));
            for k in 0..d {
                let xk = dc.reps[k];
                let mut count = 0i64;
                for &a in &dc.left_cosets[i] {
                    for &b in &dc.left_cosets[j] {
                        count += i64::from(m_xyz(g, dc, a, b, xk));
                    }
                }
                if count != 0 {
                    out[i][j].push((k, &vol * rat(count)));
                }
            }
        }
    }
    out
}

pub fn build_hecke<F: Field>(group: Arc<FiniteGroup>, l: &Subgroup, measure: &HaarMeasure, field: F) -> HeckeAlgebra<F> {
    let basis = double_cosets(&group, l);
    let consts = hecke_constants(&group, &basis, measure);
    let d = basis.len();
    let mut identity = vec![rat(0); d];
    identity[0] = Rational::from_integer(1.into()) / measure.volume_of(l);
    let rational = Arc::new(FinDimAlgebra::new(crate::arith::field::Rationals, d, consts, identity));
    let algebra = Arc::new(rational.map_field(field.clone(), |c| field.from_rational(c)));
    HeckeAlgebra { group, basis, measure: measure.clone(), rational, algebra }
}

impl<F: Field> HeckeAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> &F {
        &self.algebra.field
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.basis.subgroup
    }

    /// `ε_L` in the double-coset basis.
    pub fn epsilon(&self) -> Vec<F::Elem> {
        self.algebra.identity.clone()
    }

    /// The element as a function on `G`.
    pub fn to_function(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        (0..self.group.order()).map(|x| v[self.basis.index_of[x]].clone()).collect()
    }
}

/// The group algebra `H(G, A) = H(G, {e}, A)` under a given measure.
pub fn group_algebra<F: Field>(group: Arc<FiniteGroup>, measure: &HaarMeasure, field: F) -> HeckeAlgebra<F> {
    build_hecke(group, &Subgroup::trivial(), measure, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Rationals;
    use crate::finite::group::corpus;

    fn transposition(g: &FiniteGroup) -> usize {
        (0..g.order()).find(|&a| g.label(a) == "(0 1)").unwrap()
    }

    #[test]
    fn s3_double_cosets() {
        let g = corpus::symmetric(3);
        let l = Subgroup::generated(&g, &[transposition(&g)]).unwrap();
        let dc = double_cosets(&g, &l);
        let sizes: Vec<usize> = dc.members.iter().map(|m| m.len()).collect();
        assert_eq!(sizes, vec![2, 4]);
        assert_eq!(double_cosets(&g, &Subgroup::whole(&g)).len(), 1);
        assert_eq!(double_cosets(&g, &Subgroup::trivial()).len(), 6);
    }

    #[test]
    fn s3_hecke_is_commutative_of_dim_2() {
        let g = corpus::symmetric(3);
        let l = Subgroup::generated(&g, &[transposition(&g)]).unwrap();
        let h = build_hecke(g, &l, &HaarMeasure::normalized_on(&l), Rationals);
        assert_eq!(h.dim(), 2);
        assert!(h.algebra.is_commutative());
        assert!(h.algebra.is_associative());
        assert!(h.algebra.is_identity(&h.epsilon()));
        // T^2 = 2 + T for T = 1_{LsL}
        assert_eq!(h.algebra.constant(1, 1), &[(0, rat(2)), (1, rat(1))]);
    }

    #[test]
    fn trivial_subgroup_gives_group_algebra() {
        let g = corpus::symmetric(3);
        let e = Subgroup::trivial();
        let h = build_hecke(g.clone(), &e, &HaarMeasure::normalized_on(&e), Rationals);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(h.algebra.constant(a, b), &[(g.mul(a, b), rat(1))]);
            }
        }
    }

    #[test]
    fn identity_convolution() {
        let g = corpus::symmetric(4);
        let l = Subgroup::generated(&g, &[1, 2]).unwrap();
        let dc = double_cosets(&g, &l);
        let m = HaarMeasure::normalized_on(&l);
        assert_eq!(convolve_cosets(&g, &dc, &m, 0, 0), vec![CosetTerm { z: 0, m: 1, coeff: rat(1) }]);
    }
}
