use std::sync::Arc;

use hecke_lab::algebra::{monogenic_algebra, Module};
use hecke_lab::arith::algebraic::AlgebraicNumber;
use hecke_lab::arith::field::Field;
use hecke_lab::arith::interval::Rect;
use hecke_lab::arith::numfield::{FieldElement, FieldEmbedding, NumberField};
use hecke_lab::arith::poly::QPoly;
use hecke_lab::arith::rational::{rat, rat2, Rational};
use hecke_lab::arith::trager::lift_poly;
use hecke_lab::config::Caps;
use hecke_lab::decomp::{base_change, base_change_algebra, commutant, end_restriction_check, hom_space, is_irreducible, split_semisimple, Witness};
use hecke_lab::error::Error;
use hecke_lab::finite::{build_hecke, corpus, counting_algebra, FiniteGroup, GModule, HaarMeasure, Subgroup};
use hecke_lab::linalg::{dim_span, Matrix};
use proptest::prelude::*;

fn q() -> NumberField {
    NumberField::rationals()
}

fn field(c: &[i64], label: &str, re: Rational, im: Rational) -> NumberField {
    NumberField::new(&QPoly::from_ints(c), label, Some(&Rect::square(&re, &im, &rat2(1, 10))), 64).unwrap()
}

fn qi() -> NumberField {
    field(&[1, 0, 1], "Q(i)", rat(0), rat(1))
}

fn test_extensions() -> Vec<NumberField> {
    vec![
        qi(),
        field(&[-2, 0, 1], "Q(sqrt2)", rat2(1414, 1000), rat(0)),
        field(&[1, 1, 1], "Q(z3)", rat2(-1, 2), rat2(866, 1000)),
        field(&[1, 1, 1, 1, 1, 1, 1], "Q(z7)", rat2(6235, 10000), rat2(7818, 10000)),
    ]
}

fn element(g: &FiniteGroup, label: &str) -> usize {
    g.labels().iter().position(|l| l == label).unwrap()
}

fn int_module(g: &Arc<FiniteGroup>, k: &NumberField, images: &[(&str, Vec<Vec<i64>>)]) -> GModule<NumberField> {
    let imgs: Vec<(usize, Matrix<FieldElement>)> = images
        .iter()
        .map(|(label, rows)| {
            let m = rows.iter().map(|r| r.iter().map(|&x| k.from_int(x)).collect()).collect();
            (element(g, label), Matrix::from_rows(m, rows.len()))
        })
        .collect();
    GModule::from_generator_images(g.clone(), k.clone(), &imgs).unwrap()
}

fn s3_standard(k: &NumberField) -> GModule<NumberField> {
    let g = corpus::symmetric(3);
    int_module(&g, k, &[("(0 1)", vec![vec![0, 1], vec![1, 0]]), ("(0 1 2)", vec![vec![0, -1], vec![1, -1]])])
}

fn s3_sign(k: &NumberField) -> GModule<NumberField> {
    let g = corpus::symmetric(3);
    int_module(&g, k, &[("(0 1)", vec![vec![-1]]), ("(0 1 2)", vec![vec![1]])])
}

fn c4_plane(k: &NumberField) -> GModule<NumberField> {
    int_module(&corpus::cyclic(4), k, &[("(0 1 2 3)", vec![vec![0, -1], vec![1, 0]])])
}

/// `Q[x]/(x^2 + 1)` acting on itself.
fn gaussian_module() -> Module<NumberField> {
    let k = q();
    Arc::new(monogenic_algebra(k.clone(), &lift_poly(&k, &QPoly::from_ints(&[1, 0, 1]))).unwrap()).regular_module()
}

fn extend(m: &Module<NumberField>, b: &NumberField) -> Module<NumberField> {
    let emb = FieldEmbedding::new(m.field(), b, 64).unwrap();
    base_change(m, &base_change_algebra(&m.algebra, &emb).unwrap(), &emb).unwrap()
}

#[test]
fn one_dimensional_module_is_irreducible() {
    let k = q();
    let m = s3_sign(&k).as_module(&counting_algebra(&corpus::symmetric(3), k));
    assert!(is_irreducible(&m, Caps::default()).unwrap().irreducible);
    assert_eq!(commutant(&m).len(), 1);
}

#[test]
fn gaussian_commutant_is_a_quadratic_field() {
    let m = gaussian_module();
    assert_eq!(commutant(&m).len(), 2);
    let irr = is_irreducible(&m, Caps::default()).unwrap();
    assert_eq!(irr.witness, Witness::Certificate { commutant_dim: 2, minpoly_degree: 2 });
    let dec = split_semisimple(&extend(&m, &qi()), Caps::default()).unwrap();
    assert_eq!(dec.t(), 2);
    assert!(dec.summands.iter().all(|s| s.module.dim == 1));
    assert_eq!(dec.multiplicities, vec![1, 1]);
}

#[test]
fn two_copies_have_matrix_commutant() {
    let k = q();
    let a = counting_algebra(&corpus::symmetric(3), k.clone());
    let m = s3_standard(&k).as_module(&a);
    let mm = m.direct_sum(&m);
    assert_eq!(commutant(&mm).len(), 4);
    assert!(!is_irreducible(&mm, Caps::default()).unwrap().irreducible);
}

#[test]
fn reducible_witness_for_two_characters() {
    let k = q();
    let a = counting_algebra(&corpus::symmetric(3), k.clone());
    let m = s3_sign(&k).as_module(&a).direct_sum(&GModule::trivial(corpus::symmetric(3), k.clone()).as_module(&a));
    let irr = is_irreducible(&m, Caps::default()).unwrap();
    assert!(!irr.irreducible);
    match irr.witness {
        Witness::Submodule(s) => assert!(m.is_submodule(&s) && s.len() == 1),
        other => panic!("unexpected witness {other:?}"),
    }
}

#[test]
fn s3_hecke_quotients_are_irreducible() {
    let g = corpus::symmetric(3);
    let l = Subgroup::generated(&g, &[element(&g, "(0 1)")]).unwrap();
    let h = build_hecke(g, &l, &HaarMeasure::normalized_on(&l), q());
    let (m, _) = s3_standard(&q()).invariants_module(&h).unwrap();
    assert_eq!(m.dim, 1);
    assert!(is_irreducible(&m, Caps::default()).unwrap().irreducible);
}

#[test]
fn zero_module_is_rejected() {
    let m = gaussian_module().restrict(&[]).unwrap();
    assert!(matches!(is_irreducible(&m, Caps::default()), Err(Error::ZeroModule)));
}

#[test]
fn identity_extension_leaves_the_module_unchanged() {
    let m = gaussian_module();
    let same = extend(&m, &q());
    assert_eq!(same.action, m.action);
}

#[test]
fn commutant_dimension_survives_base_change() {
    let k = q();
    let a = counting_algebra(&corpus::symmetric(3), k.clone());
    let modules = [gaussian_module(), s3_standard(&k).as_module(&a), c4_plane(&k).as_module(&counting_algebra(&corpus::cyclic(4), k.clone()))];
    for m in &modules {
        for b in test_extensions() {
            let mb = extend(m, &b);
            assert_eq!(mb.dim, m.dim);
            assert_eq!(commutant(&mb).len(), commutant(m).len(), "over {}", b.label());
        }
    }
}

#[test]
fn absolutely_irreducible_iff_no_test_extension_splits() {
    let k = q();
    let cases: Vec<(Module<NumberField>, bool)> = vec![
        (s3_standard(&k).as_module(&counting_algebra(&corpus::symmetric(3), k.clone())), true),
        (c4_plane(&k).as_module(&counting_algebra(&corpus::cyclic(4), k.clone())), false),
        (gaussian_module(), false),
    ];
    for (m, absolute) in cases {
        assert_eq!(commutant(&m).len() == 1, absolute);
        let single = test_extensions().iter().all(|b| split_semisimple(&extend(&m, b), Caps::default()).unwrap().t() == 1);
        assert_eq!(single, absolute);
    }
}

#[test]
fn cube_root_regular_module_splits_in_three_over_its_closure() {
    let k = q();
    let m = Arc::new(monogenic_algebra(k.clone(), &lift_poly(&k, &QPoly::from_ints(&[-2, 0, 0, 1]))).unwrap()).regular_module();
    assert_eq!(commutant(&m).len(), 3);
    let c = AlgebraicNumber::from_region(&QPoly::from_ints(&[-2, 0, 0, 1]), &Rect::square(&rat2(126, 100), &rat(0), &rat2(1, 10)), 64).unwrap();
    let w = AlgebraicNumber::from_region(&QPoly::from_ints(&[1, 1, 1]), &Rect::square(&rat2(-1, 2), &rat2(866, 1000), &rat2(1, 10)), 64).unwrap();
    let closure = NumberField::from_generator(c.add(&w, 64).unwrap(), "Q(cbrt2, z3)");
    assert_eq!(closure.degree(), 6);
    let mb = extend(&m, &closure);
    let dec = split_semisimple(&mb, Caps::default()).unwrap();
    assert_eq!(dec.t(), 3);
    assert!(dec.reassembles(&mb));
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(dec.iso[i][j], i == j);
        }
    }
}

#[test]
fn noncommutative_commutant_is_refused() {
    let k = q();
    let g = corpus::symmetric(3);
    let m = GModule::regular(g.clone(), k.clone()).as_module(&counting_algebra(&g, k));
    assert!(matches!(split_semisimple(&m, Caps::default()), Err(Error::NonCommutativeCommutant)));
}

#[test]
fn hom_spaces_scale_with_base_change() {
    let k = q();
    let g = corpus::symmetric(3);
    let a = counting_algebra(&g, k.clone());
    let mods = [s3_standard(&k), s3_sign(&k), GModule::trivial(g.clone(), k.clone())];
    for b in test_extensions() {
        let ab = counting_algebra(&g, b.clone());
        let emb = FieldEmbedding::new(&k, &b, 64).unwrap();
        for x in &mods {
            for y in &mods {
                let over_a = hom_space(&x.as_module(&a), &y.as_module(&a)).unwrap().len();
                let xb = x.map_field(b.clone(), |e| emb.apply(e)).as_module(&ab);
                let yb = y.map_field(b.clone(), |e| emb.apply(e)).as_module(&ab);
                let over_b = hom_space(&xb, &yb).unwrap().len();
                assert_eq!(over_b, over_a);
                if over_b > 0 {
                    assert_eq!(x.character(), y.character());
                }
            }
        }
    }
}

#[test]
fn image_algebra_rank_is_stable_under_base_change() {
    let m = c4_plane(&q()).as_module(&counting_algebra(&corpus::cyclic(4), q()));
    let mb = extend(&m, &qi());
    let flat = |mm: &Module<NumberField>| -> usize {
        let data: Vec<Vec<FieldElement>> = mm.image_algebra().into_iter().map(|x| x.data).collect();
        dim_span(mm.field(), &data, mm.dim * mm.dim)
    };
    assert_eq!(flat(&m), 2);
    assert_eq!(flat(&mb), 2);
}

#[test]
fn end_restriction_for_split_and_gaussian_cases() {
    let k = q();
    let s3 = corpus::symmetric(3);
    let l = Subgroup::generated(&s3, &[element(&s3, "(0 1)")]).unwrap();
    let h = build_hecke(s3, &l, &HaarMeasure::normalized_on(&l), k.clone());
    let r = end_restriction_check(&s3_standard(&k), &h).unwrap();
    assert_eq!((r.end_group_dim, r.end_hecke_dim), (1, 1));
    assert!(r.bijective());

    let c4 = corpus::cyclic(4);
    let e = Subgroup::trivial();
    let h = build_hecke(c4, &e, &HaarMeasure::normalized_on(&e), k.clone());
    let r = end_restriction_check(&c4_plane(&k), &h).unwrap();
    assert_eq!((r.end_group_dim, r.end_hecke_dim), (2, 2));
    assert!(r.bijective());
}

fn invertible() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 4).prop_filter("invertible", |m| m[0] * m[3] - m[1] * m[2] != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugated_plane_splits_and_reassembles(p in invertible()) {
        let k = qi();
        let g = corpus::cyclic(4);
        let p = Matrix::from_rows(vec![vec![k.from_int(p[0]), k.from_int(p[1])], vec![k.from_int(p[2]), k.from_int(p[3])]], 2);
        let pinv = p.inverse(&k).unwrap();
        let rot = Matrix::from_rows(vec![vec![k.zero(), k.from_int(-1)], vec![k.one(), k.zero()]], 2);
        let gen = pinv.mul(&k, &rot.mul(&k, &p));
        let m = GModule::from_generator_images(g.clone(), k.clone(), &[(element(&g, "(0 1 2 3)"), gen)]).unwrap();
        let mm = m.as_module(&counting_algebra(&g, k.clone()));
        let dec = split_semisimple(&mm, Caps::default()).unwrap();
        prop_assert_eq!(dec.t(), 2);
        prop_assert!(dec.reassembles(&mm));
        prop_assert!(!dec.iso[0][1]);
        let total: usize = dec.summands.iter().map(|s| s.module.dim).sum();
        prop_assert_eq!(total, 2);
    }

    #[test]
    fn commutant_of_isotypic_sums(n in 0usize..3, m in 0usize..3, d in 0usize..2) {
        prop_assume!(n + m + d > 0);
        let k = q();
        let g = corpus::symmetric(3);
        let a = counting_algebra(&g, k.clone());
        let parts = [(s3_sign(&k), n), (GModule::trivial(g.clone(), k.clone()), m), (s3_standard(&k), d)];
        let mut sum: Option<Module<NumberField>> = None;
        for (v, copies) in &parts {
            for _ in 0..*copies {
                let vm = v.as_module(&a);
                sum = Some(match sum {
                    None => vm,
                    Some(s) => s.direct_sum(&vm),
                });
            }
        }
        let sum = sum.unwrap();
        prop_assert_eq!(commutant(&sum).len(), n * n + m * m + d * d);
        prop_assert_eq!(is_irreducible(&sum, Caps::default()).unwrap().irreducible, n + m + d == 1);
    }
}
