//! Unramified representations of split groups through the spherical algebra
//! and points of the dual torus modulo the Weyl group.

pub mod classify;
pub mod datum;
pub mod point;
pub mod spherical;
pub mod variety;

pub use classify::{base_change_table, classify, regular_module_split, unramified_class, BaseChangeTable, UnramifiedClass};
pub use datum::{DatumFile, Monomial, OrbitSum, RootDatum};
pub use point::{canonical_point, CoordLiteral, evaluate, galois_orbit, residue_field, same_class, ResidueField, TorusPoint};
pub use spherical::{spherical_mul, SphericalElement, SphericalTerm};
pub use variety::{maximal_ideal_variety, IdealVariety};
