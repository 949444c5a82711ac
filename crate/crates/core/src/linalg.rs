//! Dense matrices and subspace arithmetic over an arbitrary [`Field`].

use crate::arith::field::Field;

pub type Vector<E> = Vec<E>;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(k: &F, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![k.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = E>>(k: &F, n: usize) -> Self {
        let mut m = Self::zeros(k, n, n);
        for i in 0..n {
            m.set(i, i, k.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let r = rows.len();
        debug_assert!(rows.iter().all(|x| x.len() == cols));
        Matrix { rows: r, cols, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<E>], rows: usize) -> Self {
        let c = cols.len();
        let mut data = Vec::with_capacity(rows * c);
        for i in 0..rows {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Matrix { rows, cols: c, data }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&E) -> G::Elem) -> Matrix<G::Elem> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, k: &F, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(k, self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let v = k.add(out.get(i, j), &k.mul(a, o.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, k: &F, v: &[E]) -> Vec<E> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(k.zero(), |acc, (a, b)| if k.is_zero(a) { acc } else { k.add(&acc, &k.mul(a, b)) })
            })
            .collect()
    }

    pub fn add<F: Field<Elem = E>>(&self, k: &F, o: &Self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| k.add(a, b)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, k: &F, o: &Self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| k.sub(a, b)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, k: &F, c: &E) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| k.mul(a, c)).collect() }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.data.iter().all(|a| k.is_zero(a))
    }

    pub fn trace<F: Field<Elem = E>>(&self, k: &F) -> E {
        (0..self.rows.min(self.cols)).fold(k.zero(), |acc, i| k.add(&acc, self.get(i, i)))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, k: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !k.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = k.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = k.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if k.is_zero(&f) {
                    continue;
                }
                for j in c..m.cols {
                    let v = k.sub(m.get(i, j), &k.mul(&f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, k: &F) -> usize {
        self.rref(k).1.len()
    }

    /// Basis of `{x : self x = 0}`.
    pub fn nullspace<F: Field<Elem = E>>(&self, k: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(k);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![k.zero(); self.cols];
                v[f] = k.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = k.neg(r.get(i, f));
                }
                v
            })
            .collect()
    }

    pub fn inverse<F: Field<Elem = E>>(&self, k: &F) -> Option<Self> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Self::zeros(k, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, k.one());
        }
        let (r, pivots) = aug.rref(k);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Self::zeros(k, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// Some `x` with `self x = b`, if one exists.
    pub fn solve<F: Field<Elem = E>>(&self, k: &F, b: &[E]) -> Option<Vec<E>> {
        let mut aug = Self::zeros(k, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref(k);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![k.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }
}

/// Row-reduced basis of the span of `vecs` (ambient dimension `n`).
pub fn span_basis<F: Field>(k: &F, vecs: &[Vec<F::Elem>], n: usize) -> Vec<Vec<F::Elem>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vecs.to_vec(), n);
    let (r, pivots) = m.rref(k);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn dim_span<F: Field>(k: &F, vecs: &[Vec<F::Elem>], n: usize) -> usize {
    span_basis(k, vecs, n).len()
}

pub fn in_span<F: Field>(k: &F, basis: &[Vec<F::Elem>], v: &[F::Elem], n: usize) -> bool {
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    dim_span(k, &all, n) == dim_span(k, basis, n)
}

/// Equality of the spans of two families of vectors.
pub fn same_span<F: Field>(k: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>], n: usize) -> bool {
    span_basis(k, a, n) == span_basis(k, b, n)
}

/// Basis of the intersection of two subspaces given by spanning sets.
pub fn intersect<F: Field>(k: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>], n: usize) -> Vec<Vec<F::Elem>> {
    let a = span_basis(k, a, n);
    let b = span_basis(k, b, n);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve sum x_i a_i = sum y_j b_j.
    let mut cols: Vec<Vec<F::Elem>> = a.clone();
    cols.extend(b.iter().map(|v| v.iter().map(|e| k.neg(e)).collect()));
    let m = Matrix::from_cols(&cols, n);
    let vecs: Vec<Vec<F::Elem>> = m
        .nullspace(k)
        .into_iter()
        .map(|x| lin_comb(k, &a, &x[..a.len()], n))
        .collect();
    span_basis(k, &vecs, n)
}

pub fn lin_comb<F: Field>(k: &F, vecs: &[Vec<F::Elem>], coeffs: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let mut out = vec![k.zero(); n];
    for (v, c) in vecs.iter().zip(coeffs) {
        if k.is_zero(c) {
            continue;
        }
        for i in 0..n {
            out[i] = k.add(&out[i], &k.mul(c, &v[i]));
        }
    }
    out
}

/// Coordinates of `v` in terms of `basis`, if `v` lies in the span.
pub fn coordinates<F: Field>(k: &F, basis: &[Vec<F::Elem>], v: &[F::Elem], n: usize) -> Option<Vec<F::Elem>> {
    if basis.is_empty() {
        return v.iter().all(|e| k.is_zero(e)).then(Vec::new);
    }
    Matrix::from_cols(basis, n).solve(k, v)
}

/// Smallest subspace containing `start` and stable under all `ops`.
pub fn spin<F: Field>(k: &F, start: &[Vec<F::Elem>], ops: &[Matrix<F::Elem>], n: usize) -> Vec<Vec<F::Elem>> {
    let mut basis = span_basis(k, start, n);
    let mut frontier = basis.clone();
    while let Some(v) = frontier.pop() {
        for op in ops {
            let w = op.mul_vec(k, &v);
            if !in_span(k, &basis, &w, n) {
                basis.push(w.clone());
                basis = span_basis(k, &basis, n);
                frontier.push(w);
            }
        }
    }
    basis
}
