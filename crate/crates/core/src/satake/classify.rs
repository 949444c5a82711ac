//! Classification of unramified classes and their behaviour under base change.

use super::datum::RootDatum;
use super::point::{canonical_point, check_sqrt_q, galois_orbit, residue_field, ResidueField, TorusPoint};
use std::sync::Arc;

use crate::algebra::monogenic_algebra;
use crate::arith::numfield::{FieldEmbedding, NumberField};
use crate::arith::primitive::{relative_minpoly, tensor_split};
use crate::arith::trager::factor_over_field;
use crate::config::Caps;
use crate::decomp::{base_change, base_change_algebra, split_semisimple, Decomposition};
use crate::error::{Error, Result};

/// One isomorphism class of irreducible unramified representations over `A`.
#[derive(Debug, Clone)]
pub struct UnramifiedClass {
    /// Canonical representative of the first input point in the class.
    pub point: TorusPoint,
    pub residue: ResidueField,
    pub t: usize,
    pub galois_orbit: Vec<TorusPoint>,
    pub absolutely_irreducible: bool,
    /// Every generator evaluation already lies in `A`.
    pub evaluations_in_base: bool,
    /// Indices of the input points in this class.
    pub members: Vec<usize>,
}

pub fn unramified_class(r: &RootDatum, a: &NumberField, x: &TorusPoint, height: usize, caps: Caps) -> Result<UnramifiedClass> {
    let residue = residue_field(r, a, x, height, caps)?;
    let orbit = galois_orbit(r, a, x, caps)?;
    if orbit.len() != residue.degree {
        return Err(Error::Mismatch(format!(
            "residue degree {} differs from Galois orbit size {}",
            residue.degree,
            orbit.len()
        )));
    }
    let mut evaluations_in_base = true;
    for e in &residue.evaluations {
        if a.express(e, caps.field)?.is_none() {
            evaluations_in_base = false;
        }
    }
    Ok(UnramifiedClass {
        point: canonical_point(r, x, caps)?,
        t: residue.degree,
        absolutely_irreducible: residue.degree == 1,
        residue,
        galois_orbit: orbit,
        evaluations_in_base,
        members: Vec::new(),
    })
}

/// Partitions points into classes; classes are listed by first appearance.
pub fn classify(r: &RootDatum, a: &NumberField, points: &[TorusPoint], height: usize, caps: Caps) -> Result<Vec<UnramifiedClass>> {
    let mut classes: Vec<UnramifiedClass> = Vec::new();
    for (i, x) in points.iter().enumerate() {
        let key = canonical_point(r, x, caps)?;
        if let Some(c) = classes.iter_mut().find(|c| c.galois_orbit.contains(&key)) {
            c.members.push(i);
            continue;
        }
        let mut c = unramified_class(r, a, x, height, caps)?;
        c.members.push(i);
        classes.push(c);
    }
    Ok(classes)
}

/// The splitting of one class after extending scalars from `A` to `B`.
#[derive(Debug, Clone)]
pub struct BaseChangeTable {
    pub t: usize,
    /// `y_1, ..., y_t`; `y_1` is the class of the input point.
    pub points: Vec<TorusPoint>,
    /// `[F(y_j, B) : B]`, all 1.
    pub residue_degrees: Vec<usize>,
    /// `equivalent[i][j]`: `y_i` and `y_j` lie in one class over `B`.
    pub equivalent: Vec<Vec<bool>>,
    /// Degrees of the factors of `B (x)_A F(x, A)`.
    pub tensor_degrees: Vec<usize>,
}

/// `B` is Galois over `A`: the relative minimal polynomial of its generator splits in `B`.
pub fn check_galois(a: &NumberField, b: &NumberField, caps: Caps) -> Result<()> {
    let p = relative_minpoly(b, a, caps)?;
    let emb = FieldEmbedding::new(a, b, caps.field)?;
    let pb = p.map(b, |c| emb.apply(c));
    if factor_over_field(b, &pb, caps.field)?.iter().any(|(f, _)| f.deg() > 1) {
        return Err(Error::NotGalois(format!("{} over {}; pass its normal closure instead", b.label(), a.label())));
    }
    Ok(())
}

/// `F` embeds in `B` over `A`.
pub fn check_contains(a: &NumberField, f: &NumberField, b: &NumberField, caps: Caps) -> Result<()> {
    let p = relative_minpoly(f, a, caps)?;
    let emb = FieldEmbedding::new(a, b, caps.field)?;
    let pb = p.map(b, |c| emb.apply(c));
    if factor_over_field(b, &pb, caps.field)?.iter().any(|(g, _)| g.deg() == 1) {
        Ok(())
    } else {
        Err(Error::NotContained(format!("{} has no embedding into {}", f.label(), b.label())))
    }
}

pub fn base_change_table(
    r: &RootDatum,
    a: &NumberField,
    b: &NumberField,
    x: &TorusPoint,
    height: usize,
    caps: Caps,
) -> Result<BaseChangeTable> {
    check_sqrt_q(r, a, caps)?;
    check_galois(a, b, caps)?;
    let class = unramified_class(r, a, x, height, caps)?;
    check_contains(a, &class.residue.field, b, caps)?;
    let mut points = vec![class.point.clone()];
    points.extend(class.galois_orbit.iter().filter(|y| **y != class.point).cloned());
    let mut residue_degrees = Vec::new();
    let mut orbits_over_b = Vec::new();
    for y in &points {
        residue_degrees.push(residue_field(r, b, y, height, caps)?.degree);
        orbits_over_b.push(galois_orbit(r, b, y, caps)?);
    }
    if residue_degrees.iter().any(|&d| d != 1) {
        return Err(Error::Mismatch(format!("residue degrees over the extension are {residue_degrees:?}, expected all 1")));
    }
    let equivalent: Vec<Vec<bool>> = orbits_over_b
        .iter()
        .map(|oi| points.iter().map(|y| oi.contains(y)).collect())
        .collect();
    let tensor_degrees: Vec<usize> = tensor_split(&class.residue.field, b, a, caps)?.iter().map(|t| t.relative_degree).collect();
    if tensor_degrees.len() != class.t || tensor_degrees.iter().sum::<usize>() != class.t {
        return Err(Error::Mismatch(format!("tensor split degrees {tensor_degrees:?} do not match t = {}", class.t)));
    }
    Ok(BaseChangeTable { t: class.t, points, residue_degrees, equivalent, tensor_degrees })
}

impl BaseChangeTable {
    /// The `y_j` are pairwise inequivalent over `B`.
    pub fn pairwise_inequivalent(&self) -> bool {
        self.equivalent.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &e)| e == (i == j)))
    }
}

/// Module-side count: the regular module of `F = A[T]/(P)` over `A`, extended
/// to `B` and split into irreducibles. Its number of summands is `[F : A]`
/// once `B` contains the normal closure of `F`.
pub fn regular_module_split(f: &NumberField, a: &NumberField, b: &NumberField, caps: Caps) -> Result<Decomposition> {
    let p = relative_minpoly(f, a, caps)?;
    let alg = Arc::new(monogenic_algebra(a.clone(), &p)?);
    let m = alg.regular_module();
    let emb = FieldEmbedding::new(a, b, caps.field)?;
    let alg_b = base_change_algebra(&alg, &emb)?;
    split_semisimple(&base_change(&m, &alg_b, &emb)?, caps)
}
