//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so the summary always prints.

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use hecke_lab::algebra::Module;
use hecke_lab::arith::algebraic::AlgebraicNumber;
use hecke_lab::arith::field::Field;
use hecke_lab::arith::interval::Rect;
use hecke_lab::arith::numfield::{FieldElement, FieldEmbedding, NumberField};
use hecke_lab::arith::poly::QPoly;
use hecke_lab::arith::primitive::{joint_degree, primitive_element, tensor_split};
use hecke_lab::arith::rational::{rat, rat2, Rational};
use hecke_lab::config::Caps;
use hecke_lab::decomp::{annihilator, base_change, base_change_algebra, commutant, end_restriction_check, is_irreducible, split_semisimple};
use hecke_lab::error::Error;
use hecke_lab::finite::construct::{construct_v, construct_w, hecke_in_ambient, maximal_left_ideals};
use hecke_lab::finite::hecke::{convolve_cosets, hecke_constants, m_xyz};
use hecke_lab::finite::{all_subgroups, build_hecke, corpus, counting_algebra, double_cosets, FiniteGroup, GModule, HaarMeasure, Subgroup};
use hecke_lab::linalg::{coordinates, intersect, same_span, span_basis, Matrix};
use hecke_lab::satake::*;
use num_traits::Zero;

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn ok<T>(r: hecke_lab::error::Result<T>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn caps() -> Caps {
    Caps::default()
}

fn q() -> NumberField {
    NumberField::rationals()
}

fn field(modulus: &[i64], label: &str, re: Rational, im: Rational, r: Rational) -> NumberField {
    NumberField::new(&QPoly::from_ints(modulus), label, Some(&Rect::square(&re, &im, &r)), 64).unwrap()
}

fn qi() -> NumberField {
    field(&[1, 0, 1], "Q(i)", rat(0), rat(1), rat2(1, 2))
}

fn qsqrt(n: i64) -> NumberField {
    let s = (n as f64).sqrt();
    field(&[-n, 0, 1], &format!("Q(sqrt{n})"), rat2((s * 1000.0) as i64, 1000), rat(0), rat2(1, 10))
}

fn q_zeta3() -> NumberField {
    field(&[1, 1, 1], "Q(z3)", rat2(-1, 2), rat2(866, 1000), rat2(1, 10))
}

fn q_zeta8() -> NumberField {
    field(&[1, 0, 0, 0, 1], "Q(z8)", rat2(707, 1000), rat2(707, 1000), rat2(1, 10))
}

fn q_cbrt2() -> NumberField {
    field(&[-2, 0, 0, 1], "Q(cbrt2)", rat2(126, 100), rat(0), rat2(1, 10))
}

fn q_cubic7() -> NumberField {
    field(&[-1, -2, 1, 1], "Q(z7+1/z7)", rat2(1247, 1000), rat(0), rat2(1, 10))
}

fn q_sqrt2_sqrt3() -> NumberField {
    field(&[1, 0, -10, 0, 1], "Q(sqrt2,sqrt3)", rat2(3146, 1000), rat(0), rat2(1, 10))
}

fn alg(c: &[i64], re: Rational, im: Rational, r: Rational) -> AlgebraicNumber {
    AlgebraicNumber::from_region(&QPoly::from_ints(c), &Rect::square(&re, &im, &r), 64).unwrap()
}

fn sqrt(n: i64) -> AlgebraicNumber {
    let s = (n as f64).sqrt();
    alg(&[-n, 0, 1], rat2((s * 1000.0) as i64, 1000), rat(0), rat2(1, 10))
}

fn plastic() -> AlgebraicNumber {
    alg(&[-1, -1, 0, 1], rat2(13, 10), rat(0), rat2(1, 10))
}

fn num(q: Rational) -> AlgebraicNumber {
    AlgebraicNumber::from_rational(q)
}

fn pt(c: Vec<AlgebraicNumber>) -> TorusPoint {
    TorusPoint::new(c).unwrap()
}

fn element(g: &FiniteGroup, label: &str) -> usize {
    g.labels().iter().position(|l| l == label).unwrap_or_else(|| panic!("no element {label}"))
}

fn subgroup(g: &FiniteGroup, labels: &[&str]) -> Subgroup {
    let gens: Vec<usize> = labels.iter().map(|l| element(g, l)).collect();
    Subgroup::generated(g, &gens).unwrap()
}

// ---------------------------------------------------------------------------
// Criterion 1: coset formula against convolution in the full function space.

/// `(f ⋆ h)(z) = point_mass * sum_t f(z t^-1) h(t)`.
fn convolve(g: &FiniteGroup, pm: &Rational, f: &[Rational], h: &[Rational]) -> Vec<Rational> {
    (0..g.order())
        .map(|z| {
            (0..g.order()).fold(rat(0), |acc, t| acc + &f[g.mul(z, g.inv(t))] * &h[t]) * pm
        })
        .collect()
}

fn indicator(g: &FiniteGroup, set: impl IntoIterator<Item = usize>) -> Vec<Rational> {
    let mut v = vec![rat(0); g.order()];
    for a in set {
        v[a] = rat(1);
    }
    v
}

fn criterion_1() -> Outcome {
    let mut pairs = 0;
    let mut triples = 0;
    for (name, g) in corpus::named() {
        for l in all_subgroups(&g) {
            let dc = double_cosets(&g, &l);
            let measure = HaarMeasure::normalized_on(&l);
            let pm = measure.point_mass.clone();
            let d = dc.len();
            let ind: Vec<Vec<Rational>> = dc.members.iter().map(|m| indicator(&g, m.iter().copied())).collect();
            let formula = hecke_constants(&g, &dc, &measure);
            for i in 0..d {
                for j in 0..d {
                    let prod = convolve(&g, &pm, &ind[i], &ind[j]);
                    let mut dense = vec![rat(0); d];
                    for (k, c) in &formula[i][j] {
                        dense[*k] = c.clone();
                    }
                    for k in 0..d {
                        ensure!(prod[dc.reps[k]] == dense[k], "{name}, |L| = {}: constant ({i},{j},{k}) differs", l.order());
                    }
                    let rebuilt = (0..d).fold(vec![rat(0); g.order()], |acc, k| {
                        acc.iter().zip(&ind[k]).map(|(a, b)| a + b * &dense[k]).collect()
                    });
                    ensure!(rebuilt == prod, "{name}: product ({i},{j}) is not in the span of double cosets");
                }
            }
            let coset = |x: usize| indicator(&g, l.elements().iter().map(|&m| g.mul(x, m)));
            for &x in &dc.cosets.reps {
                for &y in &dc.cosets.reps {
                    let prod = convolve(&g, &pm, &coset(x), &coset(y));
                    let terms = convolve_cosets(&g, &dc, &measure, x, y);
                    for &z in &dc.cosets.reps {
                        let m = m_xyz(&g, &dc, x, y, z);
                        ensure!(m <= 1, "M out of range");
                        ensure!((m == 1) == !prod[z].is_zero(), "{name}: M({x},{y},{z}) = {m} off the support");
                        let coeff = terms.iter().find(|t| t.z == z).map(|t| t.coeff.clone()).unwrap_or_else(|| rat(0));
                        ensure!(coeff == prod[z], "{name}: coset convolution value at {z}");
                        triples += 1;
                    }
                }
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (G, L) pairs, {triples} coset triples"))
}

// ---------------------------------------------------------------------------
// Criteria 2 and 3: V(I, L), W(I, L) and the restriction of endomorphisms.

/// `<chi, chi>` from traces; equals `dim End_G(V)` in characteristic 0.
fn character_norm(v: &GModule<NumberField>) -> Rational {
    let k = &v.field;
    let g = &v.group;
    let chi: Vec<Rational> = v.rho.iter().map(|m| k.as_rational(&m.trace(k)).expect("rational trace")).collect();
    (0..g.order()).fold(rat(0), |acc, a| acc + &chi[a] * &chi[g.inv(a)]) / rat(g.order() as i64)
}

struct IdealReport {
    instances: usize,
    skipped: usize,
    end_ok: usize,
}

fn ideal_suite() -> std::result::Result<IdealReport, String> {
    let mut rep = IdealReport { instances: 0, skipped: 0, end_ok: 0 };
    for (name, g) in corpus::named() {
        for l in all_subgroups(&g) {
            let h = build_hecke(g.clone(), &l, &HaarMeasure::normalized_on(&l), q());
            if h.dim() > 8 {
                continue;
            }
            let ideals = match maximal_left_ideals(&h.algebra, caps()) {
                Ok(v) => v,
                Err(Error::BeyondDeskScale(_)) => {
                    rep.skipped += 1;
                    continue;
                }
                Err(e) => return Err(format!("{name}: {e}")),
            };
            for i in &ideals {
                let tag = format!("{name}, |L| = {}, dim I = {}", l.order(), i.dim());
                let v = ok(construct_v(&h, i, caps()), &tag)?;
                ensure!(v.checks.all(), "{tag}: V checks {:?}", v.checks);
                ensure!(v.invariants.len() == h.dim() - i.dim(), "{tag}: dim V^L != dim H/I");
                let w = ok(construct_w(&h, i, &v, caps()), &tag)?;
                ensure!(w.checks.head_is_v && w.checks.invariants_iso, "{tag}: W checks {:?}", w.checks);
                ensure!(w.checks.dim_w - w.checks.dim_max_submodule == v.module.dim, "{tag}: head of W has the wrong dimension");
                let end = ok(end_restriction_check(&v.module, &h), &tag)?;
                ensure!(end.bijective() && end.end_group_dim == end.end_hecke_dim, "{tag}: restriction {end:?}");
                ensure!(rat(end.end_group_dim as i64) == character_norm(&v.module), "{tag}: End_G(V) disagrees with <chi, chi>");
                rep.end_ok += 1;
                rep.instances += 1;
            }
        }
    }
    Ok(rep)
}

fn criterion_2(r: &std::result::Result<IdealReport, String>) -> Outcome {
    let r = r.as_ref().map_err(Clone::clone)?;
    ensure!(r.instances >= 10, "only {} maximal ideals", r.instances);
    Ok(format!("{} maximal left ideals ({} algebras with a noncommutative component skipped)", r.instances, r.skipped))
}

fn criterion_3(r: &std::result::Result<IdealReport, String>) -> Outcome {
    let r = r.as_ref().map_err(Clone::clone)?;
    ensure!(r.end_ok >= 10, "only {} instances", r.end_ok);
    Ok(format!("{} restriction maps bijective, dimensions match <chi, chi>", r.end_ok))
}

// ---------------------------------------------------------------------------
// Criterion 4: splitting after extension of scalars.

fn int_module(g: &Arc<FiniteGroup>, k: &NumberField, images: &[(&str, Vec<Vec<i64>>)]) -> GModule<NumberField> {
    let imgs: Vec<(usize, Matrix<FieldElement>)> = images
        .iter()
        .map(|(label, rows)| {
            let n = rows.len();
            let m = rows.iter().map(|r| r.iter().map(|&x| k.from_int(x)).collect()).collect();
            (element(g, label), Matrix::from_rows(m, n))
        })
        .collect();
    GModule::from_generator_images(g.clone(), k.clone(), &imgs).unwrap()
}

/// Columns are images of the basis `1, z, .., z^5` of `Q(zeta_7)`.
fn zeta7_matrix(f: impl Fn(usize) -> usize) -> Vec<Vec<i64>> {
    let zpow = |e: usize| -> Vec<i64> {
        match e % 7 {
            6 => vec![-1; 6],
            e => (0..6).map(|i| i64::from(i == e)).collect(),
        }
    };
    let cols: Vec<Vec<i64>> = (0..6).map(|k| zpow(f(k))).collect();
    (0..6).map(|i| (0..6).map(|j| cols[j][i]).collect()).collect()
}

struct SplitCase {
    name: &'static str,
    module: GModule<NumberField>,
    l: Subgroup,
    ext: NumberField,
    /// Degree of the commutant field over the base.
    degree: usize,
}

fn split_cases() -> Vec<SplitCase> {
    let s3 = corpus::symmetric(3);
    let s3_std = int_module(&s3, &q(), &[("(0 1)", vec![vec![0, 1], vec![1, 0]]), ("(0 1 2)", vec![vec![0, -1], vec![1, -1]])]);
    let c4 = corpus::cyclic(4);
    let c4_plane = |k: &NumberField| int_module(&c4, k, &[("(0 1 2 3)", vec![vec![0, -1], vec![1, 0]])]);
    let c3 = corpus::cyclic(3);
    let c3_plane = int_module(&c3, &q(), &[("(0 1 2)", vec![vec![0, -1], vec![1, -1]])]);
    let d4 = corpus::dihedral(4);
    let d4_std = int_module(&d4, &q(), &[("(0 1 2 3)", vec![vec![0, -1], vec![1, 0]]), ("(1 3)", vec![vec![1, 0], vec![0, -1]])]);
    let d7 = corpus::dihedral(7);
    let d7_cyc = int_module(
        &d7,
        &q(),
        &[("(0 1 2 3 4 5 6)", zeta7_matrix(|k| k + 1)), ("(1 6)(2 5)(3 4)", zeta7_matrix(|k| 7 - k))],
    );
    vec![
        SplitCase { name: "S3 plane / Q", module: s3_std.clone(), l: subgroup(&s3, &["(0 1)"]), ext: q(), degree: 1 },
        SplitCase { name: "S3 plane / Q(i)", module: s3_std, l: subgroup(&s3, &["(0 1)"]), ext: qi(), degree: 1 },
        SplitCase { name: "D4 plane / Q(sqrt2)", module: d4_std, l: subgroup(&d4, &["(1 3)"]), ext: qsqrt(2), degree: 1 },
        SplitCase { name: "C4 plane / Q(i)", module: c4_plane(&q()), l: Subgroup::trivial(), ext: qi(), degree: 2 },
        SplitCase { name: "C4 plane / Q(z8)", module: c4_plane(&q()), l: Subgroup::trivial(), ext: q_zeta8(), degree: 2 },
        SplitCase { name: "C3 plane / Q(z3)", module: c3_plane, l: Subgroup::trivial(), ext: q_zeta3(), degree: 2 },
        SplitCase { name: "D7 on Q(z7) / Q(z7+1/z7)", module: d7_cyc, l: subgroup(&d7, &["(1 6)(2 5)(3 4)"]), ext: q_cubic7(), degree: 3 },
    ]
}

fn invariant_dim(m: &Module<NumberField>, l: &Subgroup) -> usize {
    let k = m.field();
    let avg = l.elements().iter().fold(Matrix::zeros(k, m.dim, m.dim), |acc, &x| acc.add(k, &m.action[x]));
    avg.rank(k)
}

fn check_split(c: &SplitCase) -> std::result::Result<(), String> {
    let k = c.module.field.clone();
    let a = counting_algebra(&c.module.group, k.clone());
    let m_a = c.module.as_module(&a);
    ensure!(ok(is_irreducible(&m_a, caps()), c.name)?.irreducible, "{}: input is reducible", c.name);
    let f_degree = commutant(&m_a).len();
    ensure!(f_degree == c.degree, "{}: commutant degree {f_degree}, expected {}", c.name, c.degree);
    let emb = ok(FieldEmbedding::new(&k, &c.ext, 64), c.name)?;
    let m_b = ok(base_change(&m_a, &ok(base_change_algebra(&a, &emb), c.name)?, &emb), c.name)?;
    let dec = ok(split_semisimple(&m_b, caps()), c.name)?;
    ensure!(dec.t() == f_degree, "{}: t = {} but [F:A] = {f_degree}", c.name, dec.t());
    ensure!(dec.reassembles(&m_b), "{}: summands do not reassemble", c.name);
    for (n, s) in dec.summands.iter().enumerate() {
        ensure!(ok(is_irreducible(&s.module, caps()), c.name)?.irreducible, "{}: summand {n} reducible", c.name);
        ensure!(s.commutant_dim == 1, "{}: summand {n} not absolutely irreducible", c.name);
        ensure!(invariant_dim(&s.module, &c.l) > 0, "{}: summand {n} has no L-invariants", c.name);
        for o in 0..dec.t() {
            ensure!(dec.iso[n][o] == (n == o), "{}: summands {n}, {o} isomorphism mismatch", c.name);
        }
    }
    Ok(())
}

/// `Ann(1 (x) v) = B (x) I = I_1 ∩ .. ∩ I_t` for the distinguished vector of `V(I, L)`.
fn annihilator_triple(name: &str, g: Arc<FiniteGroup>, l: &Subgroup, b: &NumberField, degree: usize) -> std::result::Result<usize, String> {
    let measure = HaarMeasure::normalized_on(l);
    let h = build_hecke(g.clone(), l, &measure, q());
    let ideals = ok(maximal_left_ideals(&h.algebra, caps()), name)?;
    let i = ideals
        .iter()
        .find(|i| h.dim() - i.dim() == degree)
        .ok_or_else(|| format!("{name}: no ideal of codimension {degree}"))?;
    let v = ok(construct_v(&h, i, caps()), name)?;
    let k = q();
    let v0 = v.projection.mul_vec(&k, &hecke_in_ambient(&h)[0]);
    let (vl, basis) = ok(v.module.invariants_module(&h), name)?;
    let c0 = coordinates(&k, &basis, &v0, v.module.dim).ok_or("distinguished vector is not invariant")?;
    ensure!(same_span(&k, &annihilator(&vl, &c0), &i.basis, h.dim()), "{name}: Ann(v) != I over the base");

    let emb = ok(FieldEmbedding::new(&k, b, 64), name)?;
    let hb = build_hecke(g.clone(), l, &measure, b.clone());
    let vb = v.module.map_field(b.clone(), |e| emb.apply(e));
    let v0b: Vec<FieldElement> = v0.iter().map(|e| emb.apply(e)).collect();
    let (vlb, basis_b) = ok(vb.invariants_module(&hb), name)?;
    let n = vb.dim;
    let coords = |x: &[FieldElement]| coordinates(b, &basis_b, x, n).ok_or("vector is not invariant");
    let ann = annihilator(&vlb, &coords(&v0b)?);
    let ib: Vec<Vec<FieldElement>> = i.basis.iter().map(|r| r.iter().map(|e| emb.apply(e)).collect()).collect();
    ensure!(same_span(b, &ann, &ib, h.dim()), "{name}: Ann(1 (x) v) != B (x) I");

    let alg_b = counting_algebra(&g, b.clone());
    let dec = ok(split_semisimple(&vb.as_module(&alg_b), caps()), name)?;
    ensure!(dec.t() == degree, "{name}: t = {}", dec.t());
    let p = dec.change_of_basis();
    let w = p.inverse(b).ok_or("change of basis is singular")?.mul_vec(b, &v0b);
    let mut start = 0;
    let mut meet: Option<Vec<Vec<FieldElement>>> = None;
    for s in &dec.summands {
        let cols = s.module.dim;
        let vi = (start..start + cols).fold(vec![b.zero(); n], |acc, c| {
            acc.iter().zip(p.col(c)).map(|(x, y)| b.add(x, &b.mul(&w[c], &y))).collect()
        });
        start += cols;
        let ii = annihilator(&vlb, &coords(&vi)?);
        ensure!(h.dim() - ii.len() == 1, "{name}: component ideal has codimension {}", h.dim() - ii.len());
        meet = Some(match meet {
            None => ii,
            Some(prev) => intersect(b, &prev, &ii, h.dim()),
        });
    }
    let meet = meet.unwrap_or_default();
    ensure!(same_span(b, &meet, &ann, h.dim()), "{name}: intersection of component ideals != Ann(1 (x) v)");
    Ok(span_basis(b, &ann, h.dim()).len())
}

fn criterion_4() -> Outcome {
    let cases = split_cases();
    for c in &cases {
        check_split(c)?;
    }
    let mut degrees: Vec<usize> = cases.iter().map(|c| c.degree).collect();
    degrees.dedup();
    let d7 = corpus::dihedral(7);
    let s = subgroup(&d7, &["(1 6)(2 5)(3 4)"]);
    annihilator_triple("D7, L = <s>, B cubic", d7, &s, &q_cubic7(), 3)?;
    annihilator_triple("C4, L = 1, B = Q(i)", corpus::cyclic(4), &Subgroup::trivial(), &qi(), 2)?;
    Ok(format!("{} (module, extension) pairs with commutant degrees {degrees:?}; annihilator triple equality on 2 cases", cases.len()))
}

// ---------------------------------------------------------------------------
// Criterion 5: unramified classes.

fn weyl_group(r: &RootDatum) -> Vec<Vec<Vec<i64>>> {
    let n = r.rank;
    let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    };
    let mut group = vec![id];
    let mut frontier = group.clone();
    while let Some(w) = frontier.pop() {
        for s in &r.reflections {
            let x = mul(&w, s);
            if !group.contains(&x) {
                group.push(x.clone());
                frontier.push(x);
            }
        }
    }
    group
}

/// `(w.x)_j = prod_i x_i^{w_ij}` for rational coordinates.
fn translate(w: &[Vec<i64>], x: &[Rational]) -> Vec<Rational> {
    (0..x.len())
        .map(|j| {
            (0..x.len()).fold(rat(1), |acc, i| {
                let e = w[i][j];
                let p = num_traits::pow::pow(x[i].clone(), e.unsigned_abs() as usize);
                if e >= 0 { acc * p } else { acc / p }
            })
        })
        .collect()
}

fn rational_point(c: &[Rational]) -> TorusPoint {
    pt(c.iter().cloned().map(num).collect())
}

fn check_classes(name: &str, r: &RootDatum, points: &[TorusPoint], expected: &[Vec<usize>], ts: &[usize]) -> std::result::Result<usize, String> {
    let classes = ok(classify(r, &q(), points, 1, caps()), name)?;
    let got: Vec<Vec<usize>> = classes.iter().map(|c| c.members.clone()).collect();
    ensure!(got == expected, "{name}: classes {got:?}, expected {expected:?}");
    for (c, &t) in classes.iter().zip(ts) {
        ensure!(c.t == t, "{name}: class {:?} has t = {}, expected {t}", c.members, c.t);
        ensure!((c.t == 1) == c.evaluations_in_base, "{name}: t = 1 does not match rationality of evaluations");
        ensure!(c.absolutely_irreducible == (c.t == 1), "{name}: absolute irreducibility flag");
    }
    Ok(classes.len())
}

fn check_base_change(name: &str, r: &RootDatum, b: &NumberField, x: &TorusPoint, t: usize) -> std::result::Result<(), String> {
    let table = ok(base_change_table(r, &q(), b, x, 1, caps()), name)?;
    ensure!(table.t == t, "{name}: t = {}, expected {t}", table.t);
    ensure!(table.points.len() == t && table.pairwise_inequivalent(), "{name}: points not pairwise inequivalent");
    ensure!(table.residue_degrees.iter().all(|&d| d == 1), "{name}: points are not B-rational");
    let key = ok(canonical_point(r, x, caps()), name)?;
    let includes = table.points.iter().any(|p| canonical_point(r, p, caps()).ok() == Some(key.clone()));
    ensure!(includes, "{name}: x missing from the base change");
    ensure!(table.tensor_degrees.iter().sum::<usize>() == t, "{name}: tensor degrees {:?}", table.tensor_degrees);
    let residue = ok(residue_field(r, &q(), x, 1, caps()), name)?;
    let module_t = ok(regular_module_split(&residue.field, &q(), b, caps()), name)?.t();
    ensure!(module_t == t, "{name}: module side gives t = {module_t}");
    Ok(())
}

fn criterion_5() -> Outcome {
    let a1 = RootDatum::preset("A1", 100).unwrap();
    let s2 = sqrt(2);
    let half = rat2(1, 2);
    let a1_points = vec![
        pt(vec![s2.clone()]),
        pt(vec![s2.neg()]),
        pt(vec![s2.mul_rational(&half)]),
        pt(vec![num(rat(2))]),
        pt(vec![num(half.clone())]),
        pt(vec![num(rat(3))]),
    ];
    let mut n = check_classes("A1", &a1, &a1_points, &[vec![0, 1, 2], vec![3, 4], vec![5]], &[2, 1, 1])?;

    let a1a1 = RootDatum::preset("A1xA1", 100).unwrap();
    let a1a1_points = vec![
        pt(vec![s2.clone(), num(rat(2))]),
        pt(vec![s2.neg(), num(half.clone())]),
        pt(vec![num(rat(2)), s2.clone()]),
        pt(vec![num(half.clone()), num(rat(3))]),
        pt(vec![s2.clone(), sqrt(3)]),
    ];
    n += check_classes("A1xA1", &a1a1, &a1a1_points, &[vec![0, 1], vec![2], vec![3], vec![4]], &[2, 2, 1, 4])?;

    let a2 = RootDatum::preset("A2", 100).unwrap();
    let w = weyl_group(&a2);
    ensure!(w.len() == a2.weyl_order(), "A2 Weyl order");
    let x = [rat(2), rat(3)];
    let y = [rat(5), rat2(1, 3)];
    let i = alg(&[1, 0, 1], rat(0), rat(1), rat2(1, 2));
    let a2_points = vec![
        rational_point(&x),
        rational_point(&translate(&w[1], &x)),
        rational_point(&y),
        rational_point(&translate(&w[w.len() - 1], &x)),
        rational_point(&translate(&w[2], &y)),
        pt(vec![i.clone(), num(rat(2))]),
        pt(vec![i.neg(), num(rat(2))]),
    ];
    n += check_classes("A2", &a2, &a2_points, &[vec![0, 1, 3], vec![2, 4], vec![5, 6]], &[1, 1, 2])?;

    check_base_change("A1 sqrt2 over Q(sqrt2)", &a1, &qsqrt(2), &a1_points[0], 2)?;
    check_base_change("A1 x = 1 over Q(i)", &a1, &qi(), &pt(vec![num(rat(1))]), 1)?;
    check_base_change("A1xA1 (sqrt2, sqrt3)", &a1a1, &q_sqrt2_sqrt3(), &a1a1_points[4], 4)?;
    check_base_change("A2 (i, 2) over Q(i)", &a2, &qi(), &a2_points[5], 2)?;
    let c = plastic();
    let other = c.conjugates().into_iter().find(|z| !z.is_real()).unwrap();
    let closure = ok(primitive_element(&[c.clone(), other], &q(), caps()), "closure")?.field;
    check_base_change("A1 plastic over its closure", &a1, &closure, &pt(vec![c]), 3)?;
    Ok(format!("{n} classes on A1, A1xA1, A2; 5 base changes agree with module splitting"))
}

// ---------------------------------------------------------------------------
// Criterion 6: tensor products of fields and maximal-ideal varieties.

/// Factor degrees of `F`'s generator over `B`, from the degrees `[B(alpha_j) : B]`
/// of the individual conjugates: a factor of degree `d` carries `d` roots of degree `d`.
fn tensor_oracle(f: &NumberField, b: &NumberField) -> std::result::Result<Vec<usize>, String> {
    let db = b.degree();
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for alpha in f.generator().conjugates() {
        let joint = ok(joint_degree(&[b.generator().clone(), alpha], caps()), "joint degree")?;
        *count.entry(joint / db).or_default() += 1;
    }
    let mut out = Vec::new();
    for (d, c) in count {
        ensure!(c % d == 0, "root count {c} not divisible by degree {d}");
        out.extend(std::iter::repeat_n(d, c / d));
    }
    Ok(out)
}

fn check_variety(name: &str, r: &RootDatum, chi: &[(Monomial, AlgebraicNumber)], size: usize) -> std::result::Result<(), String> {
    let var = ok(maximal_ideal_variety(r, &q(), chi, 1, caps()), name)?;
    ensure!(var.points.len() == size, "{name}: {} points, expected {size}", var.points.len());
    let orbit = ok(galois_orbit(r, &q(), &var.point, caps()), name)?;
    ensure!(orbit == var.points, "{name}: variety is not the Galois orbit of its point");
    for p in &var.points {
        ensure!(p.coords.iter().zip(&var.point.coords).all(|(a, b)| a.minpoly() == b.minpoly()), "{name}: coordinates not conjugate");
        // Conjugate points give conjugate values; the chosen point gives the values themselves.
        for (m, value) in chi {
            let f = SphericalElement::orbit_sum(r, &q(), m);
            let e = ok(evaluate(r, &q(), &f, p, caps()), name)?;
            ensure!(e.minpoly() == value.minpoly(), "{name}: value at {} is not conjugate to the character", p.describe());
            if p == &var.point {
                ensure!(e == *value, "{name}: character value at {}", p.describe());
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let pairs: Vec<(&str, NumberField, NumberField, Option<Vec<usize>>)> = vec![
        ("Q(i) (x) Q(i)", qi(), qi(), Some(vec![1, 1])),
        ("Q(cbrt2) (x) Q(cbrt2)", q_cbrt2(), q_cbrt2(), Some(vec![1, 2])),
        ("Q(sqrt2) (x) Q(sqrt3)", qsqrt(2), qsqrt(3), None),
        ("Q(sqrt2) (x) Q(i)", qsqrt(2), qi(), None),
        ("Q(cbrt2) (x) Q(i)", q_cbrt2(), qi(), None),
        ("Q(cbrt2) (x) Q(z3)", q_cbrt2(), q_zeta3(), None),
        ("Q(z7+1/z7) (x) itself", q_cubic7(), q_cubic7(), None),
        ("Q(i) (x) Q(z8)", qi(), q_zeta8(), None),
        ("Q(sqrt2) (x) Q(sqrt2,sqrt3)", qsqrt(2), q_sqrt2_sqrt3(), None),
        ("Q(z3) (x) Q", q_zeta3(), q(), None),
    ];
    for (name, f, b, paper) in &pairs {
        let factors = ok(tensor_split(f, b, &q(), caps()), name)?;
        let mut degrees: Vec<usize> = factors.iter().map(|t| t.relative_degree).collect();
        degrees.sort();
        ensure!(degrees.iter().sum::<usize>() == f.degree(), "{name}: degrees {degrees:?} do not sum to [F:A]");
        ensure!(degrees == tensor_oracle(f, b)?, "{name}: degrees {degrees:?} disagree with conjugate degrees");
        if let Some(p) = paper {
            ensure!(&degrees == p, "{name}: degrees {degrees:?}, expected {p:?}");
        }
        for t in &factors {
            ensure!(t.field.degree() == b.degree() * t.relative_degree, "{name}: factor field degree");
        }
    }
    let a1 = RootDatum::preset("A1", 100).unwrap();
    let c = plastic();
    let s2 = sqrt(2);
    let half = rat2(1, 2);
    check_variety("A1 sqrt2", &a1, &[(vec![1], s2.mul_rational(&rat2(3, 2)))], 2)?;
    check_variety("A1 plastic", &a1, &[(vec![-1], ok(c.add(&c.inv().unwrap(), 64), "sum")?)], 3)?;
    check_variety("A1 rational", &a1, &[(vec![1], num(rat2(5, 2)))], 1)?;
    let a1a1 = RootDatum::preset("A1xA1", 100).unwrap();
    check_variety("A1xA1", &a1a1, &[(vec![1, 0], s2.mul_rational(&rat2(3, 2))), (vec![0, 1], num(rat(2) + &half))], 2)?;
    Ok(format!("{} field pairs conserve degree; 4 varieties are single Galois orbits", pairs.len()))
}

// ---------------------------------------------------------------------------
// Criterion 7: exactness of invariants and the averaging lemma.

fn invariants_of(v: &GModule<NumberField>, sub: &[Vec<FieldElement>], l: &Subgroup) -> Vec<Vec<FieldElement>> {
    let k = &v.field;
    let fixed = v.invariants(l);
    intersect(k, &span_basis(k, sub, v.dim), &fixed, v.dim)
}

fn class_sum(v: &GModule<NumberField>, class: &[usize], c: &FieldElement) -> Matrix<FieldElement> {
    let k = &v.field;
    class.iter().fold(Matrix::zeros(k, v.dim, v.dim), |acc, &g| acc.add(k, &v.rho[g].scale(k, c)))
}

fn criterion_7() -> Outcome {
    let s4 = corpus::symmetric(4);
    let k = q();
    let perm = GModule::on_cosets(s4.clone(), k.clone(), &subgroup(&s4, &["(1 2 3)", "(1 2)"]));
    let ones = vec![vec![k.one(); perm.dim]];
    let sub = perm.restrict(&ones).map_err(|e| e.to_string())?;
    let (quot, _) = perm.quotient(&ones).map_err(|e| e.to_string())?;
    let regular = GModule::regular(s4.clone(), k.clone());
    let sign_free = {
        // The augmentation submodule of the regular module and its quotient.
        let aug: Vec<Vec<FieldElement>> = (1..24)
            .map(|j| {
                let mut v = vec![k.zero(); 24];
                v[0] = k.one();
                v[j] = k.from_int(-1);
                v
            })
            .collect();
        let s = regular.restrict(&aug).map_err(|e| e.to_string())?;
        let (qq, _) = regular.quotient(&aug).map_err(|e| e.to_string())?;
        (s, qq)
    };
    let subgroups = all_subgroups(&s4);
    for l in &subgroups {
        let (a, b, c) = (sub.invariants(l).len(), perm.invariants(l).len(), quot.invariants(l).len());
        ensure!(b == a + c, "|L| = {}: {b} != {a} + {c}", l.order());
        let (a, b, c) = (sign_free.0.invariants(l).len(), regular.invariants(l).len(), sign_free.1.invariants(l).len());
        ensure!(b == a + c, "regular, |L| = {}: {b} != {a} + {c}", l.order());
        ensure!(b == 24 / l.order(), "regular module invariants have dimension [G:L]");
    }

    let ki = qi();
    let i = ki.gen_elem();
    let classes = s4.conjugacy_classes();
    let transpositions = classes.iter().find(|c| c.len() == 6 && s4.element_order(c[0]) == 2).unwrap().clone();
    let three_cycles = classes.iter().find(|c| c.len() == 8).unwrap().clone();
    let modules = [
        ("S4 on 4 points", GModule::on_cosets(s4.clone(), ki.clone(), &subgroup(&s4, &["(1 2 3)", "(1 2)"]))),
        ("S4 on 6 pairs", GModule::on_cosets(s4.clone(), ki.clone(), &subgroup(&s4, &["(0 1)", "(2 3)"]))),
        ("S4 regular", GModule::regular(s4.clone(), ki.clone())),
    ];
    let mut cases = 0;
    for (name, v) in &modules {
        let one_plus_i = ki.add(&ki.one(), &i);
        let generators = [
            class_sum(v, &transpositions, &ki.one()).add(&ki, &class_sum(v, &three_cycles, &i)),
            class_sum(v, &transpositions, &one_plus_i).sub(&ki, &Matrix::identity(&ki, v.dim).scale(&ki, &ki.from_int(6))),
            Matrix::identity(&ki, v.dim).scale(&ki, &one_plus_i),
        ];
        for a in &generators {
            let av: Vec<Vec<FieldElement>> = (0..v.dim).map(|j| a.col(j)).collect();
            for l in &subgroups {
                let lhs = invariants_of(v, &av, l);
                let rhs: Vec<Vec<FieldElement>> = v.invariants(l).iter().map(|x| a.mul_vec(&ki, x)).collect();
                ensure!(same_span(&ki, &lhs, &rhs, v.dim), "{name}, |L| = {}: (aV)^L != a V^L", l.order());
                cases += 1;
            }
        }
    }
    Ok(format!("2 exact sequences over {} subgroups; {cases} averaging cases over Q(i)", subgroups.len()))
}

// ---------------------------------------------------------------------------
// Criterion 8: the command line is deterministic.

fn criterion_8() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hecke-lab");
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let d = |f: &str| format!("{data}/{f}");
    let commands: Vec<Vec<String>> = vec![
        vec!["finite".into(), "build".into(), "--group".into(), d("s4.json"), "--subgroup".into(), d("s4_l.json"), "--oracle".into()],
        vec!["finite".into(), "construct-v".into(), "--group".into(), d("s3.json"), "--subgroup".into(), d("s3_l.json"), "--all-ideals".into(), "--ideal".into(), d("s3_ideal.json")],
        vec!["decompose".into(), "--module".into(), d("c4_plane.json"), "--ext".into(), d("field_qi.json")],
        vec!["decompose".into(), "--module".into(), d("s3_standard.json"), "--subgroup".into(), d("s3_l.json"), "--format".into(), "table".into()],
        vec!["satake".into(), "classify".into(), "--datum".into(), d("datum_a1.json"), "--points".into(), d("points_a1.json")],
        vec!["satake".into(), "classify".into(), "--datum".into(), d("datum_a2.json"), "--points".into(), d("points_a2.json"), "--format".into(), "table".into()],
        vec!["satake".into(), "base-change".into(), "--datum".into(), d("datum_a1.json"), "--point".into(), d("point_sqrt2.json"), "--ext".into(), d("field_sqrt2.json")],
        vec!["satake".into(), "variety".into(), "--datum".into(), d("datum_a1.json"), "--character".into(), d("character_sqrt2.json")],
        vec!["crosscheck".into(), "--datum".into(), d("datum_a1.json"), "--point".into(), d("point_sqrt2.json"), "--ext".into(), d("field_sqrt2.json")],
    ];
    let dir = std::env::temp_dir().join(format!("hecke-lab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    for (n, args) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..3 {
            let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
            ensure!(out.status.success(), "{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
            let file = dir.join(format!("report-{n}-{run}.json"));
            let st = Command::new(bin).args(args).arg("--output").arg(&file).status().map_err(|e| e.to_string())?;
            ensure!(st.success(), "{args:?} --output failed");
            let written = std::fs::read(&file).map_err(|e| e.to_string())?;
            ensure!(written == out.stdout, "{args:?}: --output differs from stdout");
            outputs.push(out.stdout);
        }
        ensure!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}: output differs between runs");
        if !args.contains(&"table".to_string()) {
            let v: serde_json::Value = serde_json::from_slice(&outputs[0]).map_err(|e| e.to_string())?;
            ensure!(v["schema"] == "hecke-lab/1", "{args:?}: missing schema");
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands byte-identical over 3 runs (stdout and --output)", commands.len()))
}

fn main() {
    let started = Instant::now();
    let (results, ideals) = std::thread::scope(|s| {
        let c1 = s.spawn(criterion_1);
        let ideals = s.spawn(ideal_suite);
        let c4 = s.spawn(criterion_4);
        let c5 = s.spawn(criterion_5);
        let c6 = s.spawn(criterion_6);
        let c7 = s.spawn(criterion_7);
        let c8 = s.spawn(criterion_8);
        let join = |h: std::thread::ScopedJoinHandle<'_, Outcome>| h.join().unwrap_or_else(|_| Err("panicked".into()));
        let ideals = ideals.join().unwrap_or_else(|_| Err("panicked".into()));
        let r = vec![(1, join(c1)), (4, join(c4)), (5, join(c5)), (6, join(c6)), (7, join(c7)), (8, join(c8))];
        (r, ideals)
    });
    let mut all: Vec<(usize, Outcome)> = results;
    all.push((2, criterion_2(&ideals)));
    all.push((3, criterion_3(&ideals)));
    all.sort_by_key(|(n, _)| *n);
    let mut failed = 0;
    for (n, r) in &all {
        match r {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed in {:.1}s", all.len() - failed, all.len(), started.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
