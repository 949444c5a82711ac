//! Recovering the points of a maximal ideal of the spherical algebra from the
//! values of a character on orbit sums.
//!
//! Run with `cargo run --example ideal_variety`.

use hecke_lab::arith::algebraic::AlgebraicNumber;
use hecke_lab::arith::interval::Rect;
use hecke_lab::arith::numfield::NumberField;
use hecke_lab::arith::poly::QPoly;
use hecke_lab::arith::rational::{rat, rat2};
use hecke_lab::config::{Caps, SessionConfig};
use hecke_lab::satake::{evaluate, maximal_ideal_variety, RootDatum, SphericalElement};

fn main() {
    let caps = Caps::default();
    let q = NumberField::rationals();
    let r = RootDatum::preset("A1", SessionConfig::default().weyl_order_cap).unwrap();
    // x + 1/x for the real root of x^3 - x - 1.
    let x = AlgebraicNumber::from_region(
        &QPoly::from_ints(&[-1, -1, 0, 1]),
        &Rect::square(&rat2(13, 10), &rat(0), &rat2(1, 10)),
        64,
    )
    .unwrap();
    let value = x.add(&x.inv().unwrap(), 64).unwrap();
    println!("character value on the orbit of e1: {}", value.describe());
    let var = maximal_ideal_variety(&r, &q, &[(vec![1], value.clone())], 1, caps).unwrap();
    println!("residue degree {}", var.residue_degree);
    let f = SphericalElement::orbit_sum(&r, &q, &[1]);
    for p in &var.points {
        let v = evaluate(&r, &q, &f, p, caps).unwrap();
        println!("  point {} gives {}", p.describe(), v.describe());
    }
}
