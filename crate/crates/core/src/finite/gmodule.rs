//! Representations of finite groups over a coefficient field, their fixed
//! points, and the induced module structures over Hecke algebras.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::algebra::{direct_sum_action, quotient_action, FinDimAlgebra, Module};
use crate::arith::field::Field;
use crate::arith::rational::Rational;
use crate::error::{Error, Result};
use crate::linalg::{coordinates, span_basis, Matrix};

use serde::{Deserialize, Serialize};

use crate::arith::numfield::{ElemLiteral, FieldElement, FieldLiteral, NumberField};

use super::group::{ElementRef, FiniteGroup, GroupFile, Subgroup};
use super::hecke::{HeckeAlgebra, LeftCosets};

/// `rho(g)` for every group element, acting on column vectors.
#[derive(Debug, Clone)]
pub struct GModule<F: Field> {
    pub group: Arc<FiniteGroup>,
    pub field: F,
    pub dim: usize,
    pub rho: Vec<Matrix<F::Elem>>,
}

impl<F: Field> GModule<F> {
    /// Extends images of generators to the whole group and checks the result
    /// is a homomorphism.
    pub fn from_generator_images(group: Arc<FiniteGroup>, field: F, images: &[(usize, Matrix<F::Elem>)]) -> Result<Self> {
        let dim = images.first().map(|(_, m)| m.rows).unwrap_or(0);
        if images.iter().any(|(g, m)| m.rows != dim || m.cols != dim || *g >= group.order()) {
            return Err(Error::Malformed("generator images have inconsistent shapes".into()));
        }
        let n = group.order();
        let mut rho: Vec<Option<Matrix<F::Elem>>> = vec![None; n];
        rho[0] = Some(Matrix::identity(&field, dim));
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (s, m) in images {
                let b = group.mul(a, *s);
                if rho[b].is_none() {
                    rho[b] = Some(rho[a].as_ref().unwrap().mul(&field, m));
                    queue.push_back(b);
                }
            }
        }
        let rho: Vec<Matrix<F::Elem>> = rho
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Malformed("generator images do not generate the group".into()))?;
        let m = GModule { group, field, dim, rho };
        let gens: Vec<usize> = images.iter().map(|(g, _)| *g).collect();
        m.check_homomorphism(&gens)?;
        Ok(m)
    }

    /// `rho(a s) = rho(a) rho(s)` for all `a` and all `s` in a generating set.
    fn check_homomorphism(&self, gens: &[usize]) -> Result<()> {
        let k = &self.field;
        if self.rho[0] != Matrix::identity(k, self.dim) {
            return Err(Error::Malformed("identity does not act trivially".into()));
        }
        for a in 0..self.group.order() {
            for &s in gens {
                if self.rho[self.group.mul(a, s)] != self.rho[a].mul(k, &self.rho[s]) {
                    return Err(Error::Malformed(format!("not a homomorphism at ({a}, {s})")));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<FiniteGroup>, field: F) -> Self {
        let rho = vec![Matrix::identity(&field, 1); group.order()];
        GModule { group, field, dim: 1, rho }
    }

    /// Permutation module on left cosets `G/L` (basis `1_{xL}`, ordered by
    /// coset representative). This is `H(G, A) ε_L` as a `G`-module.
    pub fn on_cosets(group: Arc<FiniteGroup>, field: F, l: &Subgroup) -> Self {
        let cosets = LeftCosets::new(&group, l);
        let m = cosets.len();
        let rho = (0..group.order())
            .map(|g| {
                let mut p = Matrix::zeros(&field, m, m);
                for (i, &x) in cosets.reps.iter().enumerate() {
                    p.set(cosets.index_of[group.mul(g, x)], i, field.one());
                }
                p
            })
            .collect();
        GModule { group, field, dim: m, rho }
    }

    pub fn regular(group: Arc<FiniteGroup>, field: F) -> Self {
        Self::on_cosets(group, field, &Subgroup::trivial())
    }

    /// Traces of `rho(g)`.
    pub fn character(&self) -> Vec<F::Elem> {
        self.rho.iter().map(|m| m.trace(&self.field)).collect()
    }

    /// Matrices of a generating set of the group.
    pub fn gen_ops(&self) -> Vec<Matrix<F::Elem>> {
        self.group.generators().iter().map(|&g| self.rho[g].clone()).collect()
    }

    /// Averaging idempotent `(1/|L|) sum_{l in L} rho(l)`.
    pub fn averaging(&self, l: &Subgroup) -> Matrix<F::Elem> {
        let k = &self.field;
        let mut acc = Matrix::zeros(k, self.dim, self.dim);
        for &x in l.elements() {
            acc = acc.add(k, &self.rho[x]);
        }
        let inv = k.from_rational(&Rational::new(1.into(), l.order().into()));
        acc.scale(k, &inv)
    }

    /// Row-reduced basis of `V^L`, the image of the averaging idempotent.
    pub fn invariants(&self, l: &Subgroup) -> Vec<Vec<F::Elem>> {
        let p = self.averaging(l);
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|j| p.col(j)).collect();
        span_basis(&self.field, &cols, self.dim)
    }

    pub fn is_fixed(&self, l: &Subgroup, v: &[F::Elem]) -> bool {
        l.elements().iter().all(|&x| self.rho[x].mul_vec(&self.field, v) == v)
    }

    /// `f.v = point_mass * sum_g f(g) rho(g) v` for a function `f` on `G`.
    pub fn act(&self, point_mass: &Rational, f: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let k = &self.field;
        let mut out = vec![k.zero(); self.dim];
        for (g, c) in f.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            let w = self.rho[g].mul_vec(k, v);
            for i in 0..self.dim {
                out[i] = k.add(&out[i], &k.mul(c, &w[i]));
            }
        }
        let m = k.from_rational(point_mass);
        out.iter().map(|x| k.mul(x, &m)).collect()
    }

    /// The same action computed over left cosets of `L`:
    /// `vol(L) * sum_{xL} f(x) rho(x) v`, valid when `f` is right `L`-invariant
    /// and `v` is `L`-fixed.
    pub fn act_by_cosets(&self, point_mass: &Rational, l: &Subgroup, f: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let k = &self.field;
        let cosets = LeftCosets::new(&self.group, l);
        let vol = k.from_rational(&(point_mass * Rational::from_integer(l.order().into())));
        let mut out = vec![k.zero(); self.dim];
        for &x in &cosets.reps {
            if k.is_zero(&f[x]) {
                continue;
            }
            let w = self.rho[x].mul_vec(k, v);
            for i in 0..self.dim {
                out[i] = k.add(&out[i], &k.mul(&f[x], &w[i]));
            }
        }
        out.iter().map(|x| k.mul(x, &vol)).collect()
    }

    /// Restriction to an invariant subspace.
    pub fn restrict(&self, basis: &[Vec<F::Elem>]) -> Result<Self> {
        let k = &self.field;
        let n = basis.len();
        let rho = self
            .rho
            .iter()
            .map(|m| {
                let cols = basis
                    .iter()
                    .map(|v| {
                        coordinates(k, basis, &m.mul_vec(k, v), self.dim)
                            .ok_or_else(|| Error::Malformed("subspace is not G-stable".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_cols(&cols, n))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GModule { group: self.group.clone(), field: k.clone(), dim: n, rho })
    }

    /// Quotient by a `G`-stable subspace, with the projection matrix.
    pub fn quotient(&self, sub: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F::Elem>)> {
        let (rho, proj) = quotient_action(&self.field, self.dim, &self.rho, &self.gen_ops(), sub)?;
        Ok((GModule { group: self.group.clone(), field: self.field.clone(), dim: proj.rows, rho }, proj))
    }

    /// Smallest `G`-stable subspace containing `vecs`.
    pub fn span_of(&self, vecs: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        crate::linalg::spin(&self.field, vecs, &self.gen_ops(), self.dim)
    }

    pub fn map_field<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> G::Elem) -> GModule<G> {
        let rho = self.rho.iter().map(|m| m.map::<G>(&f)).collect();
        GModule { group: self.group.clone(), field: target, dim: self.dim, rho }
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let rho = direct_sum_action(&self.field, &self.rho, &o.rho);
        GModule { group: self.group.clone(), field: self.field.clone(), dim: self.dim + o.dim, rho }
    }

    /// Module over [`counting_algebra`] (basis `g` acting by `rho(g)`).
    /// Modules sharing one algebra object can be compared with `hom_space`.
    pub fn as_module(&self, alg: &Arc<FinDimAlgebra<F>>) -> Module<F> {
        Module::new(alg.clone(), self.dim, self.rho.clone(), self.group.generators().to_vec())
    }

    /// Module over the group algebra `H(G, A)` (basis `1_g`, which acts as
    /// `point_mass * rho(g)`).
    pub fn over_group_algebra(&self, h: &HeckeAlgebra<F>) -> Result<Module<F>> {
        if h.dim() != self.group.order() {
            return Err(Error::Malformed("expected the group algebra H(G, A)".into()));
        }
        let k = &self.field;
        let c = k.from_rational(&h.measure.point_mass);
        let action = self.rho.iter().map(|m| m.scale(k, &c)).collect();
        Ok(Module::new(h.algebra.clone(), self.dim, action, self.group.generators().to_vec()))
    }

    /// `V^L` as a module over `H(G, L, A)`; `1_{LxL}` acts by
    /// `point_mass * sum_{g in LxL} rho(g)`. Returns the module and the basis of `V^L`.
    pub fn invariants_module(&self, h: &HeckeAlgebra<F>) -> Result<(Module<F>, Vec<Vec<F::Elem>>)> {
        let k = &self.field;
        let basis = self.invariants(h.subgroup());
        let c = k.from_rational(&h.measure.point_mass);
        let n = basis.len();
        let mut action = Vec::with_capacity(h.dim());
        for members in &h.basis.members {
            let mut t = Matrix::zeros(k, self.dim, self.dim);
            for &g in members {
                t = t.add(k, &self.rho[g]);
            }
            let t = t.scale(k, &c);
            let cols = basis
                .iter()
                .map(|v| {
                    coordinates(k, &basis, &t.mul_vec(k, v), self.dim)
                        .ok_or_else(|| Error::Mismatch("Hecke operator does not preserve V^L".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            action.push(Matrix::from_cols(&cols, n));
        }
        Ok((Module::new(h.algebra.clone(), n, action, (0..h.dim()).collect()), basis))
    }
}

/// JSON form of a representation: the group, an optional coefficient field
/// (default Q), and the matrices of a generating set of elements.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub group: GroupFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldLiteral>,
    pub images: Vec<ImageLiteral>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageLiteral {
    pub element: ElementRef,
    /// Rows of the matrix acting on column vectors.
    pub matrix: Vec<Vec<ElemLiteral>>,
}

impl ModuleFile {
    pub fn field(&self, cap: usize) -> Result<NumberField> {
        match &self.field {
            None => Ok(NumberField::rationals()),
            Some(lit) => NumberField::from_literal(lit, cap),
        }
    }

    pub fn load(&self, order_cap: usize, cap: usize) -> Result<GModule<NumberField>> {
        let group = Arc::new(FiniteGroup::from_file(&self.group, order_cap)?);
        let k = self.field(cap)?;
        let images = self
            .images
            .iter()
            .map(|im| {
                let g = im.element.resolve(&group)?;
                let n = im.matrix.len();
                let rows = im
                    .matrix
                    .iter()
                    .map(|r| {
                        if r.len() != n {
                            return Err(Error::Malformed("module matrices must be square".into()));
                        }
                        r.iter().map(|e| k.parse_elem(e)).collect::<Result<Vec<FieldElement>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((g, Matrix::from_rows(rows, n)))
            })
            .collect::<Result<Vec<_>>>()?;
        if images.is_empty() {
            return Err(Error::Malformed("module file lists no generator images".into()));
        }
        GModule::from_generator_images(group, k, &images)
    }
}

/// The group algebra `A[G]` with basis `g` and product `g h = gh`.
pub fn counting_algebra<F: Field>(group: &FiniteGroup, field: F) -> Arc<FinDimAlgebra<F>> {
    let d = group.order();
    let table = (0..d).map(|i| (0..d).map(|j| vec![(group.mul(i, j), field.one())]).collect()).collect();
    let mut id = vec![field.zero(); d];
    id[0] = field.one();
    Arc::new(FinDimAlgebra::new(field, d, table, id))
}
