//! Extension of scalars splits a representation into conjugate pieces: the
//! rotation plane of C4 over Q(i), and D7 acting on Q(zeta_7) over the real
//! cubic subfield.
//!
//! Run with `cargo run --example decompose`.

use std::path::Path;

use hecke_lab::config::{Caps, SessionConfig};
use hecke_lab::decomp::{base_change, base_change_algebra, commutant, split_semisimple};
use hecke_lab::arith::numfield::{FieldEmbedding, FieldLiteral, NumberField};
use hecke_lab::finite::{counting_algebra, ModuleFile};

fn load<T: serde::de::DeserializeOwned>(name: &str) -> T {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name);
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn split(module: &str, field: &str) {
    let cfg = SessionConfig::default();
    let caps = Caps::default();
    let file: ModuleFile = load(module);
    let v = file.load(cfg.group_order_cap, caps.q).unwrap();
    let b = NumberField::from_literal(&load::<FieldLiteral>(field), caps.q).unwrap();
    let alg = counting_algebra(&v.group, v.field.clone());
    let m = v.as_module(&alg);
    let emb = FieldEmbedding::new(&v.field, &b, caps.field).unwrap();
    let mb = base_change(&m, &base_change_algebra(&alg, &emb).unwrap(), &emb).unwrap();
    let dec = split_semisimple(&mb, caps).unwrap();
    let dims: Vec<usize> = dec.summands.iter().map(|s| s.module.dim).collect();
    println!(
        "{module} over {}: commutant dim {}, t = {}, summand dims {:?}, multiplicities {:?}, reassembles {}",
        b.label(),
        commutant(&m).len(),
        dec.t(),
        dims,
        dec.multiplicities,
        dec.reassembles(&mb),
    );
}

fn main() {
    split("c4_plane.json", "field_qi.json");
    split("s3_standard.json", "field_qi.json");
    split("d7_cyclotomic.json", "field_cubic7.json");
}
