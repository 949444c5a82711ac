//! Irreducible representations of S3 built from maximal left ideals of its
//! Hecke algebras, one algebra per subgroup.
//!
//! Run with `cargo run --example construct_v`.

use hecke_lab::arith::field::{Field, Rationals};
use hecke_lab::config::Caps;
use hecke_lab::decomp::end_restriction_check;
use hecke_lab::finite::construct::{construct_v, construct_w, maximal_left_ideals};
use hecke_lab::finite::{all_subgroups, build_hecke, corpus, HaarMeasure};

fn main() {
    let caps = Caps::default();
    let g = corpus::symmetric(3);
    for l in all_subgroups(&g) {
        let h = build_hecke(g.clone(), &l, &HaarMeasure::normalized_on(&l), Rationals);
        let labels: Vec<&str> = l.elements().iter().map(|&x| g.label(x)).collect();
        println!("L = {{{}}}: Hecke algebra of dimension {}", labels.join(", "), h.dim());
        for i in maximal_left_ideals(&h.algebra, caps).unwrap() {
            let v = construct_v(&h, &i, caps).unwrap();
            let w = construct_w(&h, &i, &v, caps).unwrap();
            let ends = end_restriction_check(&v.module, &h).unwrap();
            let chi: Vec<String> = v.module.character().iter().map(|c| Rationals.render(c)).collect();
            println!(
                "  ideal of dim {}: dim V = {}, dim V^L = {}, dim W = {}, character [{}], checks {}, End restriction bijective {}",
                i.dim(),
                v.module.dim,
                v.invariants.len(),
                w.module.dim,
                chi.join(", "),
                v.checks.all(),
                ends.bijective(),
            );
        }
    }
}
