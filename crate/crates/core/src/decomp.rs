//! Commutants, irreducibility, base change and the splitting of base-changed
//! modules into irreducible summands.

use std::sync::Arc;

use crate::algebra::{FinDimAlgebra, Module};
use crate::arith::field::Field;
use crate::arith::numfield::{FieldEmbedding, NumberField};
use crate::arith::poly::Poly;
use crate::arith::trager::FactorField;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::linalg::{span_basis, spin, Matrix};

/// Basis of `{X : X R = R X}` for every matrix `R` in `ops`.
pub fn centralizer<F: Field>(k: &F, n: usize, ops: &[Matrix<F::Elem>]) -> Vec<Matrix<F::Elem>> {
    let mut basis: Vec<Matrix<F::Elem>> = (0..n * n)
        .map(|i| {
            let mut m = Matrix::zeros(k, n, n);
            m.data[i] = k.one();
            m
        })
        .collect();
    for r in ops {
        if basis.is_empty() {
            break;
        }
        let cols: Vec<Vec<F::Elem>> = basis.iter().map(|x| x.mul(k, r).sub(k, &r.mul(k, x)).data).collect();
        let sol = Matrix::from_cols(&cols, n * n).nullspace(k);
        basis = sol.iter().map(|c| combine(k, &basis, c)).collect();
    }
    let flat: Vec<Vec<F::Elem>> = basis.iter().map(|m| m.data.clone()).collect();
    span_basis(k, &flat, n * n).into_iter().map(|data| Matrix { rows: n, cols: n, data }).collect()
}

fn combine<F: Field>(k: &F, mats: &[Matrix<F::Elem>], coeffs: &[F::Elem]) -> Matrix<F::Elem> {
    let mut acc = Matrix::zeros(k, mats[0].rows, mats[0].cols);
    for (m, c) in mats.iter().zip(coeffs) {
        if !k.is_zero(c) {
            acc = acc.add(k, &m.scale(k, c));
        }
    }
    acc
}

/// `End(M)`: matrices commuting with the action of every algebra generator.
pub fn commutant<F: Field>(m: &Module<F>) -> Vec<Matrix<F::Elem>> {
    centralizer(m.field(), m.dim, &m.gen_ops())
}

/// Intertwiners `X : M -> N` with `rho_N(a) X = X rho_M(a)`.
pub fn hom_space<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<Vec<Matrix<F::Elem>>> {
    if !Arc::ptr_eq(&m.algebra, &n.algebra) {
        return Err(Error::Malformed("hom_space needs modules over the same algebra object".into()));
    }
    let k = m.field();
    let (dm, dn) = (m.dim, n.dim);
    let mut basis: Vec<Matrix<F::Elem>> = (0..dm * dn)
        .map(|i| {
            let mut x = Matrix::zeros(k, dn, dm);
            x.data[i] = k.one();
            x
        })
        .collect();
    for &g in &m.generators {
        if basis.is_empty() {
            break;
        }
        let (rm, rn) = (&m.action[g], &n.action[g]);
        let cols: Vec<Vec<F::Elem>> = basis.iter().map(|x| rn.mul(k, x).sub(k, &x.mul(k, rm)).data).collect();
        let sol = Matrix::from_cols(&cols, dn * dm).nullspace(k);
        basis = sol.iter().map(|c| combine(k, &basis, c)).collect();
    }
    let flat: Vec<Vec<F::Elem>> = basis.iter().map(|x| x.data.clone()).collect();
    Ok(span_basis(k, &flat, dn * dm).into_iter().map(|data| Matrix { rows: dn, cols: dm, data }).collect())
}

/// Minimal polynomial of a square matrix (monic).
pub fn matrix_minpoly<F: Field>(k: &F, x: &Matrix<F::Elem>) -> Poly<F::Elem> {
    let n = x.rows;
    let mut powers: Vec<Vec<F::Elem>> = vec![Matrix::identity(k, n).data];
    let mut cur = Matrix::identity(k, n);
    loop {
        cur = cur.mul(k, x);
        if let Some(c) = crate::linalg::coordinates(k, &powers, &cur.data, n * n) {
            let mut coeffs: Vec<F::Elem> = c.iter().map(|e| k.neg(e)).collect();
            coeffs.push(k.one());
            return Poly::from_vec(k, coeffs);
        }
        powers.push(cur.data.clone());
    }
}

/// `p(X)` by Horner's rule.
pub fn eval_at_matrix<F: Field>(k: &F, p: &Poly<F::Elem>, x: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = x.rows;
    let mut acc = Matrix::zeros(k, n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(k, x).add(k, &Matrix::identity(k, n).scale(k, c));
    }
    acc
}

pub fn is_commutative<F: Field>(k: &F, basis: &[Matrix<F::Elem>]) -> bool {
    basis
        .iter()
        .enumerate()
        .all(|(i, a)| basis[i + 1..].iter().all(|b| a.mul(k, b) == b.mul(k, a)))
}

const MAX_MULTIPLIER: i64 = 64;

/// First `e = b_1 + c b_2 + c^2 b_3 + ...` (`c = 1, 2, ...`) whose minimal
/// polynomial has degree `dim`. Returns the element and its minimal polynomial.
pub fn separating_element<F: Field>(k: &F, basis: &[Matrix<F::Elem>]) -> Result<(Matrix<F::Elem>, Poly<F::Elem>, i64)> {
    let d = basis.len();
    for c in 1..=MAX_MULTIPLIER {
        let mut coef = k.one();
        let cc = k.from_int(c);
        let mut coeffs = Vec::with_capacity(d);
        for _ in 0..d {
            coeffs.push(coef.clone());
            coef = k.mul(&coef, &cc);
        }
        let e = combine(k, basis, &coeffs);
        let p = matrix_minpoly(k, &e);
        if p.deg() == d {
            return Ok((e, p, c));
        }
    }
    Err(Error::BeyondDeskScale("no separating element with multiplier up to 64".into()))
}

/// How irreducibility was decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness<E> {
    /// A proper nonzero invariant subspace (row-reduced basis).
    Submodule(Vec<Vec<E>>),
    /// The image algebra has zero radical, every standard basis vector spins to
    /// the whole module, and the commutant is a field of the given dimension,
    /// witnessed by an element whose minimal polynomial is irreducible of that degree.
    Certificate { commutant_dim: usize, minpoly_degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irreducibility<E> {
    pub irreducible: bool,
    pub witness: Witness<E>,
}

/// Decides irreducibility in characteristic zero.
pub fn is_irreducible<F: FactorField>(m: &Module<F>, caps: Caps) -> Result<Irreducibility<F::Elem>> {
    let k = m.field();
    let n = m.dim;
    if n == 0 {
        return Err(Error::ZeroModule);
    }
    let reducible = |sub: Vec<Vec<F::Elem>>| Ok(Irreducibility { irreducible: false, witness: Witness::Submodule(sub) });
    let ops = m.gen_ops();
    for i in 0..n {
        let mut e = vec![k.zero(); n];
        e[i] = k.one();
        let s = spin(k, &[e], &ops, n);
        if s.len() < n {
            return reducible(s);
        }
    }
    let rad = radical_of_span(k, &m.image_algebra());
    if !rad.is_empty() {
        let vecs: Vec<Vec<F::Elem>> = rad.iter().flat_map(|r| (0..n).map(move |j| r.col(j))).collect();
        return reducible(span_basis(k, &vecs, n));
    }
    let d = commutant(m);
    if d.len() == 1 {
        return Ok(Irreducibility { irreducible: true, witness: Witness::Certificate { commutant_dim: 1, minpoly_degree: 1 } });
    }
    if is_commutative(k, &d) {
        let (e, p, _) = separating_element(k, &d)?;
        let factors = k.factor(&p, caps.field)?;
        if factors.len() == 1 && factors[0].1 == 1 {
            return Ok(Irreducibility {
                irreducible: true,
                witness: Witness::Certificate { commutant_dim: d.len(), minpoly_degree: p.deg() },
            });
        }
        return reducible(kernel_of_factor(k, &e, &factors[0].0));
    }
    // Noncommutative commutant: split by the center first, then look for a zero divisor.
    let center = centralizer(k, n, &d)
        .into_iter()
        .filter(|z| crate::linalg::in_span(k, &d.iter().map(|x| x.data.clone()).collect::<Vec<_>>(), &z.data, n * n))
        .collect::<Vec<_>>();
    let mut candidates: Vec<Matrix<F::Elem>> = Vec::new();
    if center.len() > 1 {
        candidates.push(separating_element(k, &center)?.0);
    }
    candidates.extend(d.iter().cloned());
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            candidates.push(d[i].add(k, &d[j]));
        }
    }
    for x in candidates {
        let p = matrix_minpoly(k, &x);
        let factors = k.factor(&p, caps.field)?;
        if factors.len() > 1 || factors[0].1 > 1 {
            return reducible(kernel_of_factor(k, &x, &factors[0].0));
        }
    }
    Err(Error::BeyondDeskScale("commutant is noncommutative with no zero divisor among the tried elements".into()))
}

/// `ker q(x)` for an irreducible factor `q` of the minimal polynomial of `x`.
fn kernel_of_factor<F: Field>(k: &F, x: &Matrix<F::Elem>, q: &Poly<F::Elem>) -> Vec<Vec<F::Elem>> {
    let n = x.rows;
    span_basis(k, &eval_at_matrix(k, q, x).nullspace(k), n)
}

/// Radical of the algebra spanned by `mats` (closed under products and
/// containing the identity): kernel of the trace form.
pub fn radical_of_span<F: Field>(k: &F, mats: &[Matrix<F::Elem>]) -> Vec<Matrix<F::Elem>> {
    let d = mats.len();
    let mut rows = Vec::with_capacity(d);
    for a in mats {
        rows.push(mats.iter().map(|b| a.mul(k, b).trace(k)).collect());
    }
    Matrix::from_rows(rows, d).nullspace(k).iter().map(|c| combine(k, mats, c)).collect()
}

/// The algebra with coefficients moved along a field embedding.
pub fn base_change_algebra(a: &FinDimAlgebra<NumberField>, emb: &FieldEmbedding) -> Result<Arc<FinDimAlgebra<NumberField>>> {
    if a.field != emb.source {
        return Err(Error::Embedding(format!("algebra is over {}, embedding starts at {}", a.field.label(), emb.source.label())));
    }
    Ok(Arc::new(a.map_field(emb.target.clone(), |c| emb.apply(c))))
}

/// `M_B`: the same action matrices with entries moved into `B`, as a module
/// over the given base-changed algebra.
pub fn base_change(m: &Module<NumberField>, algebra_b: &Arc<FinDimAlgebra<NumberField>>, emb: &FieldEmbedding) -> Result<Module<NumberField>> {
    if *m.field() != emb.source || algebra_b.field != emb.target || algebra_b.dim != m.algebra.dim {
        return Err(Error::Embedding("module, algebra and embedding do not match".into()));
    }
    Ok(m.map_field(algebra_b.clone(), |c| emb.apply(c)))
}

/// A summand of a decomposition with its embedding (columns span the image).
#[derive(Debug, Clone)]
pub struct Summand {
    pub module: Module<NumberField>,
    pub embedding: Matrix<crate::arith::numfield::FieldElement>,
    pub commutant_dim: usize,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Isomorphism class index of each summand (first occurrence order).
    pub classes: Vec<usize>,
    /// Number of summands in each class.
    pub multiplicities: Vec<usize>,
    /// `iso[i][j]`: whether summands `i` and `j` are isomorphic.
    pub iso: Vec<Vec<bool>>,
    /// Commutant dimension of the input over its field.
    pub commutant_dim: usize,
}

impl Decomposition {
    pub fn t(&self) -> usize {
        self.summands.len()
    }

    /// Concatenated embeddings: an invertible change of basis to the block form.
    pub fn change_of_basis(&self) -> Matrix<crate::arith::numfield::FieldElement> {
        let cols: Vec<_> = self.summands.iter().flat_map(|s| (0..s.embedding.cols).map(|j| s.embedding.col(j))).collect();
        let n = self.summands.first().map(|s| s.embedding.rows).unwrap_or(0);
        Matrix::from_cols(&cols, n)
    }

    /// Checks `P^-1 rho(a) P` is the direct sum of the summand actions.
    pub fn reassembles(&self, m: &Module<NumberField>) -> bool {
        let k = m.field();
        let p = self.change_of_basis();
        let Some(pinv) = p.inverse(k) else { return false };
        let mut sum = self.summands[0].module.clone();
        for s in &self.summands[1..] {
            sum = sum.direct_sum(&s.module);
        }
        m.action.iter().zip(&sum.action).all(|(a, b)| pinv.mul(k, &a.mul(k, &p)) == *b)
    }
}

/// Splits a module with commutative commutant into irreducible summands:
/// factor the minimal polynomial of a separating element of the commutant and
/// take kernels of the factors.
pub fn split_semisimple(m: &Module<NumberField>, caps: Caps) -> Result<Decomposition> {
    let k = m.field().clone();
    if m.dim == 0 {
        return Err(Error::ZeroModule);
    }
    let d = commutant(m);
    if !is_commutative(&k, &d) {
        return Err(Error::NonCommutativeCommutant);
    }
    let (e, p, _) = separating_element(&k, &d)?;
    let factors = k.factor(&p, caps.field)?;
    if factors.iter().any(|(_, mult)| *mult > 1) {
        return Err(Error::Mismatch("commutant is not semisimple".into()));
    }
    let mut summands = Vec::with_capacity(factors.len());
    for (q, _) in &factors {
        let basis = kernel_of_factor(&k, &e, q);
        let module = m.restrict(&basis)?;
        let irr = is_irreducible(&module, caps)?;
        if !irr.irreducible {
            return Err(Error::Mismatch("summand from a commutant factor is reducible".into()));
        }
        let commutant_dim = commutant(&module).len();
        summands.push(Summand { embedding: Matrix::from_cols(&basis, m.dim), module, commutant_dim });
    }
    summands.sort_by(|a, b| a.module.dim.cmp(&b.module.dim).then_with(|| a.embedding.data.cmp(&b.embedding.data)));
    let t = summands.len();
    let mut iso = vec![vec![false; t]; t];
    for i in 0..t {
        for j in 0..t {
            iso[i][j] = i == j
                || (summands[i].module.dim == summands[j].module.dim
                    && !hom_space(&summands[i].module, &summands[j].module)?.is_empty());
        }
    }
    let mut classes = vec![usize::MAX; t];
    let mut multiplicities = Vec::new();
    for i in 0..t {
        if classes[i] != usize::MAX {
            continue;
        }
        let id = multiplicities.len();
        let mut count = 0;
        for j in i..t {
            if iso[i][j] {
                classes[j] = id;
                count += 1;
            }
        }
        multiplicities.push(count);
    }
    Ok(Decomposition { summands, classes, multiplicities, iso, commutant_dim: d.len() })
}

/// `Ann(v) = {x : x.v = 0}` in algebra coordinates.
pub fn annihilator<F: Field>(m: &Module<F>, v: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let k = m.field();
    let cols: Vec<Vec<F::Elem>> = m.action.iter().map(|a| a.mul_vec(k, v)).collect();
    span_basis(k, &Matrix::from_cols(&cols, m.dim).nullspace(k), m.algebra.dim)
}

/// Comparison of `End_G(V)` with `End_H(V^L)` under restriction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndRestriction {
    pub end_group_dim: usize,
    pub end_hecke_dim: usize,
    /// Every restricted endomorphism commutes with the Hecke action on `V^L`.
    pub lands_in_commutant: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl EndRestriction {
    pub fn bijective(&self) -> bool {
        self.lands_in_commutant && self.injective && self.surjective
    }
}

pub fn end_restriction_check<F: Field>(
    v: &crate::finite::GModule<F>,
    h: &crate::finite::HeckeAlgebra<F>,
) -> Result<EndRestriction> {
    let k = &v.field;
    let end_g = centralizer(k, v.dim, &v.gen_ops());
    let (vl, basis) = v.invariants_module(h)?;
    let end_h = commutant(&vl);
    let r = basis.len();
    let mut restricted = Vec::with_capacity(end_g.len());
    let mut lands = true;
    for phi in &end_g {
        let cols = basis
            .iter()
            .map(|b| {
                crate::linalg::coordinates(k, &basis, &phi.mul_vec(k, b), v.dim)
                    .ok_or_else(|| Error::Mismatch("G-endomorphism does not preserve V^L".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let x = Matrix::from_cols(&cols, r);
        lands &= vl.gen_ops().iter().all(|a| a.mul(k, &x) == x.mul(k, a));
        restricted.push(x.data);
    }
    let rank = crate::linalg::dim_span(k, &restricted, r * r);
    Ok(EndRestriction {
        end_group_dim: end_g.len(),
        end_hecke_dim: end_h.len(),
        lands_in_commutant: lands,
        injective: rank == end_g.len(),
        surjective: rank == end_h.len(),
    })
}
