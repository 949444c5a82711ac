//! The Hecke algebra of S3 relative to a transposition, its structure
//! constants, and a check against brute-force convolution.
//!
//! Run with `cargo run --example finite_hecke`.

use hecke_lab::arith::field::Rationals;
use hecke_lab::arith::rational::format_rational;
use hecke_lab::finite::oracle::brute_force_constants;
use hecke_lab::finite::{build_hecke, corpus, HaarMeasure, Subgroup};

fn main() {
    let g = corpus::symmetric(3);
    let s = g.labels().iter().position(|l| l == "(0 1)").unwrap();
    let l = Subgroup::generated(&g, &[s]).unwrap();
    let measure = HaarMeasure::normalized_on(&l);
    let h = build_hecke(g.clone(), &l, &measure, Rationals);

    println!("G = S3, L = <(0 1)>, point mass {}", format_rational(&measure.point_mass));
    for (i, m) in h.basis.members.iter().enumerate() {
        let labels: Vec<&str> = m.iter().map(|&x| g.label(x)).collect();
        println!("  double coset {i}: {{{}}}", labels.join(", "));
    }
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            let terms: Vec<String> =
                h.algebra.constant(i, j).iter().map(|(k, c)| format!("{} T{k}", format_rational(c))).collect();
            println!("  T{i} * T{j} = {}", terms.join(" + "));
        }
    }
    println!("commutative: {}", h.algebra.is_commutative());
    let brute = brute_force_constants(&g, &h.basis, &measure).unwrap();
    let agrees = (0..h.dim()).all(|i| (0..h.dim()).all(|j| brute[i][j].as_slice() == h.rational.constant(i, j)));
    println!("matches brute-force convolution: {agrees}");
}
