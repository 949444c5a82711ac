//! Unramified classes for A1 and A2: residue fields, Galois orbits of torus
//! points, and how a class splits after base change.
//!
//! Run with `cargo run --example satake_classes`.

use hecke_lab::arith::algebraic::AlgebraicNumber;
use hecke_lab::arith::interval::Rect;
use hecke_lab::arith::numfield::NumberField;
use hecke_lab::arith::poly::QPoly;
use hecke_lab::arith::rational::{rat, rat2};
use hecke_lab::config::Caps;
use hecke_lab::satake::{base_change_table, classify, regular_module_split, RootDatum, TorusPoint};

fn root(c: &[i64], re: (i64, i64), im: (i64, i64)) -> AlgebraicNumber {
    let rect = Rect::square(&rat2(re.0, re.1), &rat2(im.0, im.1), &rat2(1, 10));
    AlgebraicNumber::from_region(&QPoly::from_ints(c), &rect, 64).unwrap()
}

fn main() {
    let caps = Caps::default();
    let q = NumberField::rationals();
    let a1 = RootDatum::preset("A1", caps_weyl()).unwrap();
    let sqrt2 = root(&[-2, 0, 1], (1414, 1000), (0, 1));
    let points = vec![
        TorusPoint::new(vec![sqrt2.clone()]).unwrap(),
        TorusPoint::new(vec![sqrt2.neg()]).unwrap(),
        TorusPoint::new(vec![sqrt2.inv().unwrap()]).unwrap(),
        TorusPoint::new(vec![AlgebraicNumber::from_rational(rat(3))]).unwrap(),
    ];
    println!("A1 over Q:");
    for c in classify(&a1, &q, &points, 1, caps).unwrap() {
        println!(
            "  class of {} with members {:?}: t = {}, orbit size {}, absolutely irreducible {}",
            c.point.describe(),
            c.members,
            c.t,
            c.galois_orbit.len(),
            c.absolutely_irreducible,
        );
    }

    let b = NumberField::from_generator(sqrt2.clone(), "Q(sqrt2)");
    let x = TorusPoint::new(vec![sqrt2]).unwrap();
    let table = base_change_table(&a1, &q, &b, &x, 1, caps).unwrap();
    println!(
        "over Q(sqrt2): t = {}, residue degrees {:?}, pairwise inequivalent {}, tensor degrees {:?}",
        table.t,
        table.residue_degrees,
        table.pairwise_inequivalent(),
        table.tensor_degrees,
    );
    let class = &classify(&a1, &q, &[x], 1, caps).unwrap()[0];
    let dec = regular_module_split(&class.residue.field, &q, &b, caps).unwrap();
    println!("module side over Q(sqrt2): {} summands", dec.t());

    let a2 = RootDatum::preset("A2", caps_weyl()).unwrap();
    let i = root(&[1, 0, 1], (0, 1), (1, 1));
    let y = TorusPoint::new(vec![i.clone(), AlgebraicNumber::from_rational(rat(2))]).unwrap();
    let c = &classify(&a2, &q, &[y], 1, caps).unwrap()[0];
    println!("A2 point (i, 2): |W| = {}, t = {}, residue degree {}", a2.weyl_order(), c.t, c.residue.degree);
}

fn caps_weyl() -> usize {
    hecke_lab::config::SessionConfig::default().weyl_order_cap
}
