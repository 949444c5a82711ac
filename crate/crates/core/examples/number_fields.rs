//! Exact arithmetic: factoring over Q and over number fields, algebraic
//! numbers with certified embeddings, primitive elements, and the splitting
//! of a tensor product of fields.
//!
//! Run with `cargo run --example number_fields`.

use hecke_lab::arith::algebraic::AlgebraicNumber;
use hecke_lab::arith::factor::factor_over_q;
use hecke_lab::arith::field::{Field, Rationals};
use hecke_lab::arith::interval::Rect;
use hecke_lab::arith::numfield::NumberField;
use hecke_lab::arith::poly::QPoly;
use hecke_lab::arith::primitive::{primitive_element, tensor_split};
use hecke_lab::arith::rational::rat2;
use hecke_lab::arith::trager::{factor_over_field, lift_poly};
use hecke_lab::config::Caps;

fn near(c: &[i64], re: (i64, i64), im: (i64, i64)) -> AlgebraicNumber {
    let rect = Rect::square(&rat2(re.0, re.1), &rat2(im.0, im.1), &rat2(1, 10));
    AlgebraicNumber::from_region(&QPoly::from_ints(c), &rect, 64).unwrap()
}

fn main() {
    let caps = Caps::default();
    let q = NumberField::rationals();

    let p = QPoly::from_ints(&[-2, 0, -3, 0, 0, 0, 1]);
    let f = factor_over_q(&p, caps.q).unwrap();
    let parts: Vec<String> = f.factors.iter().map(|(g, e)| format!("({})^{e}", g.render(&Rationals, "T"))).collect();
    println!("{} = {}", p.render(&Rationals, "T"), parts.join(" "));

    let c = near(&[-2, 0, 0, 1], (126, 100), (0, 1));
    let k = NumberField::from_generator(c.clone(), "Q(c)");
    let t3 = lift_poly(&k, &QPoly::from_ints(&[-2, 0, 0, 1]));
    let fs = factor_over_field(&k, &t3, caps.field).unwrap();
    let parts: Vec<String> = fs.iter().map(|(g, _)| format!("({})", g.render(&k, "T"))).collect();
    println!("over Q(c) with c^3 = 2: T^3 - 2 = {}", parts.join(" "));

    let s2 = near(&[-2, 0, 1], (1414, 1000), (0, 1));
    let s3 = near(&[-3, 0, 1], (1732, 1000), (0, 1));
    let sum = s2.add(&s3, 64).unwrap();
    println!("sqrt2 + sqrt3 = {}", sum.describe());
    println!("sqrt2 == -sqrt2: {}", s2 == s2.neg());

    let pe = primitive_element(&[s2, s3], &q, caps).unwrap();
    println!("Q(sqrt2, sqrt3) = Q(alpha), alpha = {}, degree {}", pe.field.generator().describe(), pe.field.degree());

    let w = near(&[1, 1, 1], (-1, 2), (866, 1000));
    let closure = primitive_element(&[c, w], &q, caps).unwrap().field;
    for factor in tensor_split(&k, &closure, &q, caps).unwrap() {
        println!("Q(c) (x) closure: factor of relative degree {}", factor.relative_degree);
    }
}
