//! Hecke algebras of finite groups and the modules built from their left ideals.

pub mod construct;
pub mod gmodule;
pub mod group;
pub mod hecke;
pub mod oracle;

pub use gmodule::{counting_algebra, GModule, ImageLiteral, ModuleFile};
pub use group::{all_subgroups, corpus, ElementRef, FiniteGroup, GroupFile, Subgroup, SubgroupFile};
pub use hecke::{build_hecke, convolve_cosets, double_cosets, group_algebra, DoubleCosetBasis, HaarMeasure, HeckeAlgebra};
