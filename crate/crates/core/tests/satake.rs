use hecke_lab::arith::algebraic::AlgebraicNumber;
use hecke_lab::arith::field::Field;
use hecke_lab::arith::interval::Rect;
use hecke_lab::arith::numfield::NumberField;
use hecke_lab::arith::poly::QPoly;
use hecke_lab::arith::primitive::primitive_element;
use hecke_lab::arith::rational::{rat, rat2, Rational};
use hecke_lab::config::Caps;
use hecke_lab::error::Error;
use hecke_lab::satake::*;
use proptest::prelude::*;

fn near(c: &[i64], re: Rational, im: Rational, r: Rational) -> AlgebraicNumber {
    AlgebraicNumber::from_region(&QPoly::from_ints(c), &Rect::square(&re, &im, &r), 64).unwrap()
}

fn sqrt(n: i64) -> AlgebraicNumber {
    let s = (n as f64).sqrt();
    near(&[-n, 0, 1], rat2((s * 1000.0) as i64, 1000), rat(0), rat2(1, 10))
}

fn plastic() -> AlgebraicNumber {
    near(&[-1, -1, 0, 1], rat2(13, 10), rat(0), rat2(1, 10))
}

fn pt(c: Vec<AlgebraicNumber>) -> TorusPoint {
    TorusPoint::new(c).unwrap()
}

fn q() -> NumberField {
    NumberField::rationals()
}

#[test]
fn sqrt3_point_has_quadratic_residue_field() {
    let r = RootDatum::preset("A1", 100).unwrap();
    let x = pt(vec![sqrt(3)]);
    let f = residue_field(&r, &q(), &x, 1, Caps::default()).unwrap();
    assert_eq!(f.degree, 2);
    // sqrt3 + 1/sqrt3 = 4 sqrt3 / 3
    assert_eq!(f.evaluations, vec![sqrt(3).mul_rational(&rat2(4, 3))]);
}

#[test]
fn cubic_point_and_normal_closure() {
    let caps = Caps::default();
    let r = RootDatum::preset("A1", 100).unwrap();
    let c = plastic();
    let x = pt(vec![c.clone()]);
    let class = unramified_class(&r, &q(), &x, 1, caps).unwrap();
    assert_eq!(class.t, 3);
    assert_eq!(class.galois_orbit.len(), 3);
    let other = c.conjugates().into_iter().find(|z| !z.is_real()).unwrap();
    let closure = primitive_element(&[c, other], &q(), caps).unwrap().field;
    assert_eq!(closure.degree(), 6);
    let table = base_change_table(&r, &q(), &closure, &x, 1, caps).unwrap();
    assert_eq!(table.t, 3);
    assert_eq!(table.residue_degrees, vec![1, 1, 1]);
    assert!(table.pairwise_inequivalent());
    assert_eq!(table.tensor_degrees, vec![1, 1, 1]);
}

#[test]
fn cubic_point_over_its_own_field_is_not_galois() {
    let caps = Caps::default();
    let r = RootDatum::preset("A1", 100).unwrap();
    let c = plastic();
    let k = NumberField::from_generator(c.clone(), "Q(c)");
    let x = pt(vec![c]);
    assert!(matches!(base_change_table(&r, &q(), &k, &x, 1, caps), Err(Error::NotGalois(_))));
}

#[test]
fn product_datum_classes() {
    let caps = Caps::default();
    let r = RootDatum::preset("A1xA1", 100).unwrap();
    let s2 = sqrt(2);
    let a = pt(vec![s2.clone(), AlgebraicNumber::from_int(2)]);
    let b = pt(vec![s2.neg().inv().unwrap(), AlgebraicNumber::from_rational(rat2(1, 2))]);
    let c = pt(vec![AlgebraicNumber::from_int(2), s2.clone()]);
    let classes = classify(&r, &q(), &[a, b, c], 1, caps).unwrap();
    assert_eq!(classes.len(), 2);
    assert_eq!(classes[0].members, vec![0, 1]);
    assert_eq!(classes[0].t, 2);
}

#[test]
fn rank_two_presets_classify() {
    let caps = Caps::default();
    let i = near(&[1, 0, 1], rat(0), rat(1), rat2(1, 2));
    for name in ["A2", "B2"] {
        let r = RootDatum::preset(name, 100).unwrap();
        let x = pt(vec![i.clone(), AlgebraicNumber::from_int(2)]);
        let class = unramified_class(&r, &q(), &x, 1, caps).unwrap();
        assert_eq!(class.t, class.galois_orbit.len(), "{name}");
        let y = pt(vec![i.neg(), AlgebraicNumber::from_int(2)]);
        assert!(same_class(&r, &q(), &x, &y, caps).unwrap(), "{name}");
    }
}

#[test]
fn non_simply_connected_needs_sqrt_q() {
    let caps = Caps::default();
    let file = DatumFile { preset: Some("A1".into()), simply_connected: false, q: 3, ..Default::default() };
    let r = RootDatum::from_file(&file, 100).unwrap();
    let x = pt(vec![AlgebraicNumber::from_int(5)]);
    assert_eq!(residue_field(&r, &q(), &x, 1, caps).unwrap_err(), Error::FieldConstraint { q: 3 });
    let k = NumberField::from_generator(sqrt(3), "Q(sqrt3)");
    assert!(residue_field(&r, &k, &x, 1, caps).is_ok());
}

#[test]
fn variety_of_cubic_character() {
    let caps = Caps::default();
    let r = RootDatum::preset("A1", 100).unwrap();
    let c = plastic();
    let v = c.add(&c.inv().unwrap(), 64).unwrap();
    let var = maximal_ideal_variety(&r, &q(), &[(vec![-1], v)], 1, caps).unwrap();
    assert_eq!(var.points.len(), 3);
    assert_eq!(var.residue_degree, 3);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (1i64..7, 1i64..5, any::<bool>()).prop_map(|(n, d, s)| rat2(if s { n } else { -n }, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Orbit-sum evaluation is constant on W-orbits.
    #[test]
    fn evaluation_is_w_invariant(a in small_rational(), b in small_rational(), lx in -2i64..3, ly in -2i64..3) {
        let caps = Caps::default();
        for name in ["A1xA1", "A2", "B2"] {
            let r = RootDatum::preset(name, 100).unwrap();
            let f = SphericalElement::orbit_sum(&r, &q(), &[lx, ly]);
            let x = pt(vec![AlgebraicNumber::from_rational(a.clone()), AlgebraicNumber::from_rational(b.clone())]);
            let v = evaluate(&r, &q(), &f, &x, caps).unwrap();
            let y = canonical_point(&r, &x, caps).unwrap();
            prop_assert_eq!(evaluate(&r, &q(), &f, &y, caps).unwrap(), v);
        }
    }

    /// Evaluation is a ring homomorphism on the spherical algebra.
    #[test]
    fn evaluation_is_multiplicative(a in small_rational(), m in -2i64..3, n in -2i64..3) {
        let caps = Caps::default();
        let r = RootDatum::preset("A1", 100).unwrap();
        let k = q();
        let f = SphericalElement::orbit_sum(&r, &k, &[m]);
        let g = SphericalElement::orbit_sum(&r, &k, &[n]);
        let fg = spherical_mul(&r, &k, &f, &g).unwrap();
        let x = pt(vec![AlgebraicNumber::from_rational(a)]);
        let lhs = evaluate(&r, &k, &fg, &x, caps).unwrap();
        let rhs = evaluate(&r, &k, &f, &x, caps).unwrap().mul(&evaluate(&r, &k, &g, &x, caps).unwrap(), 64).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Conjugating a point does not change its class over Q.
    #[test]
    fn galois_conjugates_share_a_class(n in 2i64..12) {
        let caps = Caps::default();
        let r = RootDatum::preset("A1", 100).unwrap();
        let s = (n as f64).sqrt();
        prop_assume!((s.round() as i64).pow(2) != n);
        let root = sqrt(n);
        let x = pt(vec![root.clone()]);
        let y = pt(vec![root.neg()]);
        prop_assert!(same_class(&r, &q(), &x, &y, caps).unwrap());
        prop_assert_eq!(galois_orbit(&r, &q(), &x, caps).unwrap().len(), 2);
    }
}
