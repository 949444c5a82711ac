//! Left ideals of Hecke algebras and the modules `V(I, L)` and `W(I, L)`.

use serde::{Deserialize, Serialize};

use crate::algebra::{FinDimAlgebra, Module};
use crate::arith::field::Field;
use crate::arith::numfield::{ElemLiteral, FieldElement, NumberField};
use crate::arith::poly::Poly;
use crate::arith::trager::FactorField;
use crate::config::Caps;
use crate::decomp::{hom_space, is_irreducible, radical_of_span};
use crate::error::{Error, Result};
use crate::linalg::{coordinates, in_span, same_span, span_basis, Matrix};

use super::gmodule::{counting_algebra, GModule};
use super::hecke::HeckeAlgebra;

/// A left ideal, stored as a row-reduced basis of coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftIdeal<F: Field> {
    pub basis: Vec<Vec<F::Elem>>,
}

/// On-disk ideal: coefficient vectors in the double-coset basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub basis: Vec<Vec<ElemLiteral>>,
}

impl IdealFile {
    pub fn parse(&self, k: &NumberField) -> Result<Vec<Vec<FieldElement>>> {
        self.basis.iter().map(|v| v.iter().map(|e| k.parse_elem(e)).collect()).collect()
    }
}

impl<F: Field> LeftIdeal<F> {
    /// Row-reduces and checks closure under left multiplication by basis elements.
    pub fn new(alg: &FinDimAlgebra<F>, vecs: &[Vec<F::Elem>]) -> Result<Self> {
        let k = &alg.field;
        let d = alg.dim;
        if vecs.iter().any(|v| v.len() != d) {
            return Err(Error::Malformed(format!("ideal vectors must have length {d}")));
        }
        let basis = span_basis(k, vecs, d);
        for i in 0..d {
            let bi = alg.basis_vector(i);
            for v in &basis {
                if !in_span(k, &basis, &alg.mul(&bi, v), d) {
                    return Err(Error::Malformed("subspace is not a left ideal".into()));
                }
            }
        }
        Ok(LeftIdeal { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `C / I` as a left module over `C`.
    pub fn quotient_module(&self, alg: &std::sync::Arc<FinDimAlgebra<F>>) -> Result<Module<F>> {
        Ok(alg.regular_module().quotient(&self.basis)?.0)
    }
}

/// Checks that `I` is proper and that `H / I` is irreducible.
pub fn check_maximal<F: FactorField>(alg: &std::sync::Arc<FinDimAlgebra<F>>, i: &LeftIdeal<F>, caps: Caps) -> Result<()> {
    if i.dim() >= alg.dim {
        return Err(Error::NotProper);
    }
    let q = i.quotient_module(alg)?;
    if !is_irreducible(&q, caps)?.irreducible {
        return Err(Error::NotMaximal(format!("quotient of dimension {} is reducible", q.dim)));
    }
    Ok(())
}

/// `H(G, L, A)` inside `H(G, A) ε_L`: `1_{LxL}` is the sum of the `1_{aL}` it contains.
pub fn hecke_in_ambient<F: Field>(h: &HeckeAlgebra<F>) -> Vec<Vec<F::Elem>> {
    let k = h.field();
    let m = h.basis.cosets.len();
    h.basis
        .left_cosets
        .iter()
        .map(|cs| {
            let mut v = vec![k.zero(); m];
            for &a in cs {
                v[h.basis.cosets.index_of[a]] = k.one();
            }
            v
        })
        .collect()
}

/// Matrix of `f -> ε_L ⋆ f` from `H(G, A) ε_L` (coset basis) to `H(G, L, A)`
/// (double-coset basis): `ε_L ⋆ 1_{aL} = 1_{LaL} / #(LaL / L)`.
pub fn epsilon_projection<F: Field>(h: &HeckeAlgebra<F>) -> Matrix<F::Elem> {
    let k = h.field();
    let m = h.basis.cosets.len();
    let mut p = Matrix::zeros(k, h.dim(), m);
    for (a, &rep) in h.basis.cosets.reps.iter().enumerate() {
        let i = h.basis.index_of[rep];
        let n = h.basis.left_cosets[i].len() as i64;
        p.set(i, a, k.inv(&k.from_int(n)).unwrap());
    }
    p
}

/// `V(I, L)` with the data that certifies it.
#[derive(Debug, Clone)]
pub struct VConstruction<F: Field> {
    /// `H(G, A) ε_L`, the permutation module on `G/L`.
    pub ambient: GModule<F>,
    /// `J_{I,L}`, in coset coordinates.
    pub kernel: Vec<Vec<F::Elem>>,
    pub module: GModule<F>,
    /// `ambient -> module`.
    pub projection: Matrix<F::Elem>,
    /// Basis of `V^L` in module coordinates.
    pub invariants: Vec<Vec<F::Elem>>,
    /// Indices of double-coset basis elements spanning a complement of `I`.
    pub complement: Vec<usize>,
    /// Columns: images in `V` of the complement basis, i.e. `H(G,L,A)/I -> V^L`.
    pub intertwiner: Matrix<F::Elem>,
    pub checks: VChecks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VChecks {
    /// `ε_L J_{I,L} = I`.
    pub epsilon_kernel_is_ideal: bool,
    /// The map `H(G,L,A) -> V` has kernel exactly `I`.
    pub intertwiner_kernel_is_ideal: bool,
    /// Its image is `V^L`.
    pub intertwiner_onto_invariants: bool,
    /// It commutes with the `H(G,L,A)` actions.
    pub intertwiner_equivariant: bool,
    pub irreducible: bool,
}

impl VChecks {
    pub fn all(&self) -> bool {
        self.epsilon_kernel_is_ideal
            && self.intertwiner_kernel_is_ideal
            && self.intertwiner_onto_invariants
            && self.intertwiner_equivariant
            && self.irreducible
    }
}

/// `V(I, L) = H(G, A) ε_L / J_{I,L}`, where `J_{I,L}` is the largest
/// submodule `J` with `ε_L ⋆ J ⊂ I`.
pub fn construct_v<F: FactorField>(h: &HeckeAlgebra<F>, i: &LeftIdeal<F>, caps: Caps) -> Result<VConstruction<F>> {
    check_maximal(&h.algebra, i, caps)?;
    let k = h.field();
    let d = h.dim();
    let ambient = GModule::on_cosets(h.group.clone(), k.clone(), h.subgroup());
    let m = ambient.dim;
    let eps = epsilon_projection(h);
    // Functionals vanishing on I.
    let ann = Matrix::from_rows(i.basis.clone(), d).nullspace(k);
    let mut rows = Vec::new();
    for g in 0..h.group.order() {
        let pg = eps.mul(k, &ambient.rho[g]);
        for w in &ann {
            rows.push((0..m).map(|c| (0..d).fold(k.zero(), |acc, r| k.add(&acc, &k.mul(&w[r], pg.get(r, c))))).collect());
        }
    }
    let kernel = if rows.is_empty() {
        // I = H(G, L, A) is excluded by properness, so this only happens for d = 0.
        span_basis(k, &(0..m).map(|j| unit(k, m, j)).collect::<Vec<_>>(), m)
    } else {
        span_basis(k, &Matrix::from_rows(rows, m).nullspace(k), m)
    };
    let (module, projection) = ambient.quotient(&kernel)?;
    let invariants = module.invariants(h.subgroup());

    let eps_j: Vec<Vec<F::Elem>> = kernel.iter().map(|v| eps.mul_vec(k, v)).collect();
    let epsilon_kernel_is_ideal = same_span(k, &eps_j, &i.basis, d);

    let hecke = hecke_in_ambient(h);
    let to_v = |x: &[F::Elem]| -> Vec<F::Elem> {
        let amb = crate::linalg::lin_comb(k, &hecke, x, m);
        projection.mul_vec(k, &amb)
    };
    let pivots: Vec<usize> = i.basis.iter().map(|v| v.iter().position(|c| !k.is_zero(c)).unwrap()).collect();
    let complement: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let full: Vec<Vec<F::Elem>> = (0..d).map(|j| to_v(&unit(k, d, j))).collect();
    let phi = Matrix::from_cols(&full, module.dim);
    let ker = span_basis(k, &phi.nullspace(k), d);
    let intertwiner_kernel_is_ideal = ker == i.basis;
    let images: Vec<Vec<F::Elem>> = complement.iter().map(|&j| full[j].clone()).collect();
    let intertwiner_onto_invariants = same_span(k, &images, &invariants, module.dim)
        && span_basis(k, &images, module.dim).len() == d - i.dim();

    let c = k.from_rational(&h.measure.point_mass);
    let mut equivariant = true;
    for (t, members) in h.basis.members.iter().enumerate() {
        let mut op = Matrix::zeros(k, module.dim, module.dim);
        for &g in members {
            op = op.add(k, &module.rho[g]);
        }
        let op = op.scale(k, &c);
        for j in 0..d {
            let lhs = to_v(&h.algebra.mul(&h.algebra.basis_vector(t), &unit(k, d, j)));
            if lhs != op.mul_vec(k, &full[j]) {
                equivariant = false;
            }
        }
    }
    let alg = counting_algebra(&h.group, k.clone());
    let irreducible = module.dim > 0 && is_irreducible(&module.as_module(&alg), caps)?.irreducible;
    let checks = VChecks {
        epsilon_kernel_is_ideal,
        intertwiner_kernel_is_ideal,
        intertwiner_onto_invariants,
        intertwiner_equivariant: equivariant,
        irreducible,
    };
    let intertwiner = Matrix::from_cols(&images, module.dim);
    Ok(VConstruction { ambient, kernel, module, projection, invariants, complement, intertwiner, checks })
}

fn unit<F: Field>(k: &F, n: usize, j: usize) -> Vec<F::Elem> {
    let mut v = vec![k.zero(); n];
    v[j] = k.one();
    v
}

/// `W(I, L) = H(G, A) ε_L / H(G, A) I` with its unique maximal proper submodule.
#[derive(Debug, Clone)]
pub struct WConstruction<F: Field> {
    /// `H(G, A) I`, in coset coordinates.
    pub kernel: Vec<Vec<F::Elem>>,
    pub module: GModule<F>,
    pub projection: Matrix<F::Elem>,
    /// `rad(E) W` for the image algebra `E`, in `W` coordinates.
    pub max_submodule: Vec<Vec<F::Elem>>,
    /// `W -> V(I, L)` induced by the identity of the ambient module.
    pub to_v: Matrix<F::Elem>,
    pub checks: WChecks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WChecks {
    /// `W / max_submodule` is irreducible and isomorphic to `V`.
    pub head_is_v: bool,
    /// `W^L -> V^L` is an isomorphism.
    pub invariants_iso: bool,
    pub dim_w: usize,
    pub dim_v: usize,
    pub dim_max_submodule: usize,
}

pub fn construct_w<F: FactorField>(h: &HeckeAlgebra<F>, i: &LeftIdeal<F>, v: &VConstruction<F>, caps: Caps) -> Result<WConstruction<F>> {
    let k = h.field();
    let m = v.ambient.dim;
    let hecke = hecke_in_ambient(h);
    let gens: Vec<Vec<F::Elem>> = i.basis.iter().map(|x| crate::linalg::lin_comb(k, &hecke, x, m)).collect();
    let kernel = v.ambient.span_of(&gens);
    if !kernel.iter().all(|x| in_span(k, &v.kernel, x, m)) {
        return Err(Error::Mismatch("H(G,A) I is not contained in J_{I,L}".into()));
    }
    let (module, projection) = v.ambient.quotient(&kernel)?;
    let n = module.dim;
    let alg = counting_algebra(&h.group, k.clone());
    let ops = module.as_module(&alg);
    let rad = radical_of_span(k, &ops.image_algebra());
    let vecs: Vec<Vec<F::Elem>> = rad.iter().flat_map(|r| (0..n).map(move |j| r.col(j))).collect();
    let max_submodule = span_basis(k, &vecs, n);
    let (head, _) = module.quotient(&max_submodule)?;

    // W -> V: a W-coordinate vector lifts to the ambient via the complement
    // standard vectors of the quotient construction.
    let lift = section(k, &projection);
    let to_v = v.projection.mul(k, &lift);

    let head_ops = head.as_module(&alg);
    let v_ops = v.module.as_module(&alg);
    let head_is_v = head.dim == v.module.dim
        && is_irreducible(&head_ops, caps)?.irreducible
        && !hom_space(&head_ops, &v_ops)?.is_empty();

    let wl = module.invariants(h.subgroup());
    let images: Vec<Vec<F::Elem>> = wl.iter().map(|x| to_v.mul_vec(k, x)).collect();
    let invariants_iso = wl.len() == v.invariants.len() && span_basis(k, &images, v.module.dim).len() == wl.len();
    let checks = WChecks { head_is_v, invariants_iso, dim_w: n, dim_v: v.module.dim, dim_max_submodule: max_submodule.len() };
    Ok(WConstruction { kernel, module, projection, max_submodule, to_v, checks })
}

/// A right inverse of a surjective projection built by `quotient_action`: the
/// projection is the identity on the complement coordinates.
fn section<F: Field>(k: &F, proj: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (q, n) = (proj.rows, proj.cols);
    let mut s = Matrix::zeros(k, n, q);
    let mut row = 0;
    for j in 0..n {
        if row < q && (0..q).all(|i| proj.get(i, j) == &if i == row { k.one() } else { k.zero() }) {
            s.set(j, row, k.one());
            row += 1;
        }
    }
    debug_assert_eq!(row, q);
    s
}

/// Minimal polynomial of `x` in an algebra whose identity is taken to be `one`
/// (so corner algebras `fCf` work with `one = f`).
pub fn element_minpoly<F: Field>(alg: &FinDimAlgebra<F>, x: &[F::Elem], one: &[F::Elem]) -> Poly<F::Elem> {
    let k = &alg.field;
    let d = alg.dim;
    let mut powers = vec![one.to_vec()];
    let mut cur = one.to_vec();
    loop {
        cur = alg.mul(&cur, x);
        if let Some(c) = coordinates(k, &powers, &cur, d) {
            let mut coeffs: Vec<F::Elem> = c.iter().map(|e| k.neg(e)).collect();
            coeffs.push(k.one());
            return Poly::from_vec(k, coeffs);
        }
        powers.push(cur.clone());
    }
}

/// `p(x)` with `x^0 = one`.
pub fn eval_in_algebra<F: Field>(alg: &FinDimAlgebra<F>, p: &Poly<F::Elem>, x: &[F::Elem], one: &[F::Elem]) -> Vec<F::Elem> {
    let k = &alg.field;
    let mut acc = vec![k.zero(); alg.dim];
    for c in p.coeffs().iter().rev() {
        acc = alg.mul(&acc, x);
        for (a, o) in acc.iter_mut().zip(one) {
            *a = k.add(a, &k.mul(c, o));
        }
    }
    acc
}

/// The idempotent `q(x)` with `q = 1 mod a`, `q = 0 mod b`, for `minpoly(x) = a b` coprime.
fn split_idempotent<F: Field>(alg: &FinDimAlgebra<F>, x: &[F::Elem], one: &[F::Elem], a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Vec<F::Elem> {
    let k = &alg.field;
    // s a + t b = 1, so t b = 1 mod a and t b = 0 mod b.
    let (_, _, t) = a.xgcd(k, b);
    let q = t.mul(k, b);
    eval_in_algebra(alg, &q, x, one)
}

/// Splits `minpoly(x)` into `(p_1^e_1, rest)` when it is reducible.
fn reducible_split<F: FactorField>(k: &F, p: &Poly<F::Elem>, caps: Caps) -> Result<Option<(Poly<F::Elem>, Poly<F::Elem>)>> {
    let factors = k.factor(p, caps.field)?;
    if factors.len() < 2 {
        return Ok(None);
    }
    let a = factors[0].0.pow(k, factors[0].1);
    let b = p.exact_div(k, &a).expect("factor divides");
    Ok(Some((a, b)))
}

/// Primitive central idempotents, by splitting the center with a separating element.
pub fn central_idempotents<F: FactorField>(alg: &FinDimAlgebra<F>, caps: Caps) -> Result<Vec<Vec<F::Elem>>> {
    let mut todo = vec![alg.identity.clone()];
    let mut done = Vec::new();
    let center = alg.center();
    while let Some(e) = todo.pop() {
        let corner: Vec<Vec<F::Elem>> = span_basis(&alg.field, &center.iter().map(|z| alg.mul(&e, z)).collect::<Vec<_>>(), alg.dim);
        match split_by_some_element(alg, &corner, &e, caps, true)? {
            Some((g, h)) => {
                todo.push(g);
                todo.push(h);
            }
            None => done.push(e),
        }
    }
    done.sort_by(|a, b| a.iter().map(|x| alg.field.is_zero(x)).cmp(b.iter().map(|x| alg.field.is_zero(x))).then_with(|| format!("{a:?}").cmp(&format!("{b:?}"))));
    Ok(done)
}

/// Finds an element of the span with reducible minimal polynomial (relative to
/// `one`) and returns the two complementary idempotents it produces.
fn split_by_some_element<F: FactorField>(
    alg: &FinDimAlgebra<F>,
    span: &[Vec<F::Elem>],
    one: &[F::Elem],
    caps: Caps,
    commutative: bool,
) -> Result<Option<(Vec<F::Elem>, Vec<F::Elem>)>> {
    let k = &alg.field;
    if span.len() <= 1 {
        return Ok(None);
    }
    let mut candidates: Vec<Vec<F::Elem>> = Vec::new();
    if commutative {
        // A separating element has minimal polynomial of degree dim span.
        for c in 1..=64i64 {
            let mut coef = k.one();
            let cc = k.from_int(c);
            let mut x = vec![k.zero(); alg.dim];
            for v in span {
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi = k.add(xi, &k.mul(&coef, vi));
                }
                coef = k.mul(&coef, &cc);
            }
            if element_minpoly(alg, &x, one).deg() == span.len() {
                candidates.push(x);
                break;
            }
        }
    } else {
        candidates.extend(span.iter().cloned());
        for i in 0..span.len() {
            for j in i + 1..span.len() {
                candidates.push(span[i].iter().zip(&span[j]).map(|(a, b)| k.add(a, b)).collect());
            }
        }
    }
    for x in candidates {
        let p = element_minpoly(alg, &x, one);
        if let Some((a, b)) = reducible_split(k, &p, caps)? {
            let g = split_idempotent(alg, &x, one, &a, &b);
            let h: Vec<F::Elem> = one.iter().zip(&g).map(|(o, gi)| k.sub(o, gi)).collect();
            return Ok(Some((g, h)));
        }
    }
    if commutative {
        return Ok(None);
    }
    Err(Error::BeyondDeskScale("corner algebra is noncommutative with no zero divisor among the tried elements".into()))
}

/// A primitive idempotent below `e`, refining inside the corner algebra `eCe`
/// until the corner is a field.
pub fn primitive_idempotent<F: FactorField>(alg: &FinDimAlgebra<F>, e: &[F::Elem], caps: Caps) -> Result<Vec<F::Elem>> {
    let k = &alg.field;
    let mut f = e.to_vec();
    loop {
        let corner: Vec<Vec<F::Elem>> = span_basis(
            k,
            &(0..alg.dim).map(|i| alg.mul(&alg.mul(&f, &alg.basis_vector(i)), &f)).collect::<Vec<_>>(),
            alg.dim,
        );
        let commutative = corner.iter().enumerate().all(|(i, a)| corner[i + 1..].iter().all(|b| alg.mul(a, b) == alg.mul(b, a)));
        match split_by_some_element(alg, &corner, &f, caps, commutative)? {
            Some((g, _)) => f = g,
            None => return Ok(f),
        }
    }
}

/// One maximal left ideal `C(1 - f)` per simple component, `f` primitive.
pub fn maximal_left_ideals<F: FactorField>(alg: &FinDimAlgebra<F>, caps: Caps) -> Result<Vec<LeftIdeal<F>>> {
    let k = &alg.field;
    let mut out = Vec::new();
    for e in central_idempotents(alg, caps)? {
        let f = primitive_idempotent(alg, &e, caps)?;
        let comp: Vec<F::Elem> = alg.identity.iter().zip(&f).map(|(o, x)| k.sub(o, x)).collect();
        let vecs: Vec<Vec<F::Elem>> = (0..alg.dim).map(|i| alg.mul(&alg.basis_vector(i), &comp)).collect();
        out.push(LeftIdeal::new(alg, &vecs)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Rationals;
    use crate::finite::group::{corpus, Subgroup};
    use crate::finite::hecke::{build_hecke, HaarMeasure};

    #[test]
    fn s3_index_character_gives_trivial_module() {
        let g = corpus::symmetric(3);
        let t = (0..6).find(|&a| g.label(a) == "(0 1)").unwrap();
        let l = Subgroup::generated(&g, &[t]).unwrap();
        let h = build_hecke(g, &l, &HaarMeasure::normalized_on(&l), Rationals);
        // Index character: T -> 2. Its kernel is spanned by T - 2.
        let i = LeftIdeal::new(&h.algebra, &[vec![crate::arith::rational::rat(-2), crate::arith::rational::rat(1)]]).unwrap();
        let v = construct_v(&h, &i, Caps::default()).unwrap();
        assert_eq!(v.module.dim, 1);
        assert!(v.checks.all());
        assert!(v.module.rho.iter().all(|m| m == &Matrix::identity(&Rationals, 1)));
        let w = construct_w(&h, &i, &v, Caps::default()).unwrap();
        assert!(w.checks.head_is_v && w.checks.invariants_iso);
    }

    #[test]
    fn s3_group_algebra_ideals() {
        let g = corpus::symmetric(3);
        let e = Subgroup::trivial();
        let h = build_hecke(g, &e, &HaarMeasure::normalized_on(&e), Rationals);
        let ideals = maximal_left_ideals(&h.algebra, Caps::default()).unwrap();
        let mut dims: Vec<usize> = ideals.iter().map(|i| 6 - i.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2]);
        for i in &ideals {
            let v = construct_v(&h, i, Caps::default()).unwrap();
            assert!(v.checks.all());
            assert_eq!(v.module.dim, 6 - i.dim());
        }
    }
}
