//! Exact computations with Hecke algebras of finite groups, extension of
//! scalars for their modules, and the classification of unramified classes
//! through the spherical algebra of a split torus.

pub mod algebra;
pub mod arith;
pub mod cli;
pub mod config;
pub mod decomp;
pub mod error;
pub mod finite;
pub mod linalg;
pub mod report;
pub mod satake;
