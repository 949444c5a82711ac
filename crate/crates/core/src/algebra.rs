//! Finite-dimensional associative algebras given by structure constants, and
//! modules over them given by action matrices.

use std::sync::Arc;

use crate::arith::field::Field;
use crate::arith::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::{span_basis, spin, Matrix};

/// `b_i b_j = sum_k c^k_ij b_k`, stored sparsely.
#[derive(Debug, Clone)]
pub struct FinDimAlgebra<F: Field> {
    pub field: F,
    pub dim: usize,
    table: Vec<Vec<(usize, F::Elem)>>,
    pub identity: Vec<F::Elem>,
}

impl<F: Field> FinDimAlgebra<F> {
    /// `constants[i][j]` lists the nonzero `(k, c^k_ij)`.
    pub fn new(field: F, dim: usize, constants: Vec<Vec<Vec<(usize, F::Elem)>>>, identity: Vec<F::Elem>) -> Self {
        let table = constants.into_iter().flatten().collect();
        FinDimAlgebra { field, dim, table, identity }
    }

    pub fn constant(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.dim + j]
    }

    /// Dense `c^k_ij`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> F::Elem {
        self.constant(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let k = &self.field;
        (0..self.dim).map(|j| if i == j { k.one() } else { k.zero() }).collect()
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let k = &self.field;
        let mut out = vec![k.zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if k.is_zero(b) {
                    continue;
                }
                let ab = k.mul(a, b);
                for (kk, c) in self.constant(i, j) {
                    out[*kk] = k.add(&out[*kk], &k.mul(&ab, c));
                }
            }
        }
        out
    }

    /// Matrix of `y -> x y` (columns are images of basis vectors).
    pub fn left_mul_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_cols(&cols, self.dim)
    }

    pub fn right_mul_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_cols(&cols, self.dim)
    }

    pub fn is_identity(&self, e: &[F::Elem]) -> bool {
        (0..self.dim).all(|i| {
            let b = self.basis_vector(i);
            self.mul(e, &b) == b && self.mul(&b, e) == b
        })
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim;
        for i in 0..d {
            let bi = self.basis_vector(i);
            for j in 0..d {
                let bij = self.mul(&bi, &self.basis_vector(j));
                for l in 0..d {
                    let bl = self.basis_vector(l);
                    let left = self.mul(&bij, &bl);
                    let right = self.mul(&bi, &self.mul(&self.basis_vector(j), &bl));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.constant(i, j) == self.constant(j, i)))
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<F::Elem>> {
        let k = &self.field;
        let d = self.dim;
        let mut rows = Vec::new();
        for i in 0..d {
            let l = self.right_mul_matrix(&self.basis_vector(i));
            let r = self.left_mul_matrix(&self.basis_vector(i));
            // z b_i - b_i z = (R_{b_i} - L_{b_i}) z
            let m = l.sub(k, &r);
            rows.extend(m.row_vecs());
        }
        Matrix::from_rows(rows, d).nullspace(k)
    }

    /// Radical as the kernel of the trace form `tr(L_{xy})` (characteristic zero).
    pub fn radical(&self) -> Vec<Vec<F::Elem>> {
        let k = &self.field;
        let d = self.dim;
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                let p = self.mul(&self.basis_vector(i), &self.basis_vector(j));
                row.push(self.left_mul_matrix(&p).trace(k));
            }
            rows.push(row);
        }
        Matrix::from_rows(rows, d).nullspace(k)
    }

    /// Coefficients in the new field through `f`.
    pub fn map_field<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> G::Elem) -> FinDimAlgebra<G> {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|(kk, c)| (*kk, f(c))).filter(|(_, c)| !target.is_zero(c)).collect())
            .collect();
        let identity = self.identity.iter().map(&f).collect();
        FinDimAlgebra { field: target, dim: self.dim, table, identity }
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular_module(self: &Arc<Self>) -> Module<F> {
        let action = (0..self.dim).map(|i| self.left_mul_matrix(&self.basis_vector(i))).collect();
        Module::new(self.clone(), self.dim, action, (0..self.dim).collect())
    }
}

/// `k[T]/(p)` on the basis `1, T, ..., T^(d-1)` for a monic `p` of degree `d`.
pub fn monogenic_algebra<F: Field>(k: F, p: &Poly<F::Elem>) -> Result<FinDimAlgebra<F>>
where
    F::Elem: Eq + std::hash::Hash,
{
    let d = p.deg();
    if d == 0 || !p.is_monic(&k) {
        return Err(Error::Malformed("monogenic algebra needs a monic polynomial of positive degree".into()));
    }
    let powers: Vec<Vec<F::Elem>> = (0..2 * d - 1)
        .map(|e| {
            let r = Poly::monomial(&k, k.one(), e).rem(&k, p);
            (0..d).map(|i| r.coeff(&k, i)).collect()
        })
        .collect();
    let constants = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| powers[i + j].iter().cloned().enumerate().filter(|(_, c)| !k.is_zero(c)).collect())
                .collect()
        })
        .collect();
    let mut identity = vec![k.zero(); d];
    identity[0] = k.one();
    Ok(FinDimAlgebra::new(k, d, constants, identity))
}

/// A module over a [`FinDimAlgebra`]: one matrix per algebra basis element
/// (acting on column vectors), plus indices of a generating subset.
#[derive(Debug, Clone)]
pub struct Module<F: Field> {
    pub algebra: Arc<FinDimAlgebra<F>>,
    pub dim: usize,
    pub action: Vec<Matrix<F::Elem>>,
    pub generators: Vec<usize>,
}

impl<F: Field> Module<F> {
    pub fn new(algebra: Arc<FinDimAlgebra<F>>, dim: usize, action: Vec<Matrix<F::Elem>>, generators: Vec<usize>) -> Self {
        Module { algebra, dim, action, generators }
    }

    pub fn field(&self) -> &F {
        &self.algebra.field
    }

    /// Matrices of the generating subset.
    pub fn gen_ops(&self) -> Vec<Matrix<F::Elem>> {
        self.generators.iter().map(|&i| self.action[i].clone()).collect()
    }

    /// `rho(x)` for an algebra element `x`.
    pub fn rho(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let k = self.field();
        let mut m = Matrix::zeros(k, self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !k.is_zero(c) {
                m = m.add(k, &self.action[i].scale(k, c));
            }
        }
        m
    }

    pub fn act(&self, x: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        self.rho(x).mul_vec(self.field(), v)
    }

    /// Checks `rho(b_i) rho(b_j) = sum_k c^k_ij rho(b_k)` and `rho(1) = I`.
    pub fn verify(&self) -> Result<()> {
        let k = self.field();
        let a = &self.algebra;
        if self.action.len() != a.dim || self.action.iter().any(|m| m.rows != self.dim || m.cols != self.dim) {
            return Err(Error::Malformed("action matrices do not match algebra/module dimensions".into()));
        }
        if self.rho(&a.identity) != Matrix::identity(k, self.dim) {
            return Err(Error::Malformed("algebra identity does not act as the identity".into()));
        }
        for i in 0..a.dim {
            for j in 0..a.dim {
                let lhs = self.action[i].mul(k, &self.action[j]);
                let mut rhs = Matrix::zeros(k, self.dim, self.dim);
                for (kk, c) in a.constant(i, j) {
                    rhs = rhs.add(k, &self.action[*kk].scale(k, c));
                }
                if lhs != rhs {
                    return Err(Error::Malformed(format!("action violates structure constants at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    /// Smallest submodule containing the given vectors.
    pub fn submodule_generated(&self, vecs: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        spin(self.field(), vecs, &self.gen_ops(), self.dim)
    }

    pub fn is_submodule(&self, basis: &[Vec<F::Elem>]) -> bool {
        let k = self.field();
        let b = span_basis(k, basis, self.dim);
        self.gen_ops()
            .iter()
            .all(|op| b.iter().all(|v| crate::linalg::in_span(k, &b, &op.mul_vec(k, v), self.dim)))
    }

    /// The module restricted to an invariant subspace with the given basis.
    pub fn restrict(&self, basis: &[Vec<F::Elem>]) -> Result<Module<F>> {
        let k = self.field();
        let n = basis.len();
        let mut action = Vec::with_capacity(self.action.len());
        for op in &self.action {
            let cols = basis
                .iter()
                .map(|v| {
                    crate::linalg::coordinates(k, basis, &op.mul_vec(k, v), self.dim)
                        .ok_or_else(|| Error::Malformed("subspace is not invariant".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            action.push(Matrix::from_cols(&cols, n));
        }
        Ok(Module::new(self.algebra.clone(), n, action, self.generators.clone()))
    }

    /// Quotient by an invariant subspace. Returns the quotient module and the
    /// projection matrix (quotient dim x module dim).
    pub fn quotient(&self, sub: &[Vec<F::Elem>]) -> Result<(Module<F>, Matrix<F::Elem>)> {
        let (action, proj) = quotient_action(self.field(), self.dim, &self.action, &self.gen_ops(), sub)?;
        Ok((Module::new(self.algebra.clone(), proj.rows, action, self.generators.clone()), proj))
    }

    /// Extension of scalars along a field map.
    pub fn map_field<G: Field>(&self, algebra: Arc<FinDimAlgebra<G>>, f: impl Fn(&F::Elem) -> G::Elem) -> Module<G> {
        let action = self.action.iter().map(|m| m.map::<G>(&f)).collect();
        Module::new(algebra, self.dim, action, self.generators.clone())
    }

    /// Direct sum with another module over the same algebra.
    pub fn direct_sum(&self, o: &Module<F>) -> Module<F> {
        let action = direct_sum_action(self.field(), &self.action, &o.action);
        Module::new(self.algebra.clone(), self.dim + o.dim, action, self.generators.clone())
    }

    /// Image of the algebra in `End(M)`, as a list of matrices spanning it.
    pub fn image_algebra(&self) -> Vec<Matrix<F::Elem>> {
        let k = self.field();
        let n = self.dim;
        let flat = |m: &Matrix<F::Elem>| m.data.clone();
        let ops = self.gen_ops();
        let id = Matrix::identity(k, n);
        // Spin the identity under left multiplication by generators in matrix space.
        let lmul: Vec<Matrix<F::Elem>> = ops
            .iter()
            .map(|g| {
                let cols: Vec<Vec<F::Elem>> = (0..n * n)
                    .map(|idx| {
                        let mut e = Matrix::zeros(k, n, n);
                        e.data[idx] = k.one();
                        flat(&g.mul(k, &e))
                    })
                    .collect();
                Matrix::from_cols(&cols, n * n)
            })
            .collect();
        spin(k, &[flat(&id)], &lmul, n * n)
            .into_iter()
            .map(|v| Matrix { rows: n, cols: n, data: v })
            .collect()
    }
}

/// Action on `V/S` for an invariant subspace `S`, with the projection `V -> V/S`.
/// The complement is spanned by the standard vectors off the pivots of `S`.
pub fn quotient_action<F: Field>(
    k: &F,
    n: usize,
    action: &[Matrix<F::Elem>],
    gens: &[Matrix<F::Elem>],
    sub: &[Vec<F::Elem>],
) -> Result<(Vec<Matrix<F::Elem>>, Matrix<F::Elem>)> {
    let sub = span_basis(k, sub, n);
    let stable = gens
        .iter()
        .all(|op| sub.iter().all(|v| crate::linalg::in_span(k, &sub, &op.mul_vec(k, v), n)));
    if !stable {
        return Err(Error::Malformed("quotient by a non-invariant subspace".into()));
    }
    let pivots: Vec<usize> = sub.iter().map(|v| v.iter().position(|c| !k.is_zero(c)).unwrap()).collect();
    let comp: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let q = comp.len();
    let mut cols = sub.clone();
    for &i in &comp {
        let mut e = vec![k.zero(); n];
        e[i] = k.one();
        cols.push(e);
    }
    let pinv = Matrix::from_cols(&cols, n)
        .inverse(k)
        .ok_or_else(|| Error::Malformed("degenerate subspace".into()))?;
    let s = sub.len();
    let mut proj = Matrix::zeros(k, q, n);
    for i in 0..q {
        for j in 0..n {
            proj.set(i, j, pinv.get(s + i, j).clone());
        }
    }
    let out = action
        .iter()
        .map(|op| {
            let mut m = Matrix::zeros(k, q, q);
            for (jj, &j) in comp.iter().enumerate() {
                let c = proj.mul_vec(k, &op.col(j));
                for (i, x) in c.into_iter().enumerate() {
                    m.set(i, jj, x);
                }
            }
            m
        })
        .collect();
    Ok((out, proj))
}

/// Block-diagonal sums of paired matrices.
pub fn direct_sum_action<F: Field>(k: &F, a: &[Matrix<F::Elem>], b: &[Matrix<F::Elem>]) -> Vec<Matrix<F::Elem>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let n = x.rows + y.rows;
            let mut m = Matrix::zeros(k, n, n);
            for i in 0..x.rows {
                for j in 0..x.cols {
                    m.set(i, j, x.get(i, j).clone());
                }
            }
            for i in 0..y.rows {
                for j in 0..y.cols {
                    m.set(x.rows + i, x.rows + j, y.get(i, j).clone());
                }
            }
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Rationals;
    use crate::arith::rational::rat;

    /// Q[x]/(x^2+1) with basis 1, x.
    fn gaussian() -> Arc<FinDimAlgebra<Rationals>> {
        let c = vec![
            vec![vec![(0, rat(1))], vec![(1, rat(1))]],
            vec![vec![(1, rat(1))], vec![(0, rat(-1))]],
        ];
        Arc::new(FinDimAlgebra::new(Rationals, 2, c, vec![rat(1), rat(0)]))
    }

    #[test]
    fn gaussian_algebra_is_a_field() {
        let a = gaussian();
        assert!(a.is_associative());
        assert!(a.is_commutative());
        assert!(a.is_identity(&a.identity));
        assert!(a.radical().is_empty());
        assert_eq!(a.center().len(), 2);
        let m = a.regular_module();
        m.verify().unwrap();
        assert_eq!(m.image_algebra().len(), 2);
    }

    #[test]
    fn dual_numbers_have_radical() {
        // Q[e]/(e^2)
        let c = vec![vec![vec![(0, rat(1))], vec![(1, rat(1))]], vec![vec![(1, rat(1))], vec![]]];
        let a = FinDimAlgebra::new(Rationals, 2, c, vec![rat(1), rat(0)]);
        assert_eq!(a.radical(), vec![vec![rat(0), rat(1)]]);
    }
}
