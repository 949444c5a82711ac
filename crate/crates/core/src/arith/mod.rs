//! Exact arithmetic: rationals, polynomials, factorization, number fields and
//! algebraic numbers with certified isolation.

pub mod algebraic;
pub mod factor;
pub mod field;
pub mod interval;
pub mod modp;
pub mod numfield;
pub mod poly;
pub mod primitive;
pub mod rational;
pub mod resultant;
pub mod roots;
pub mod trager;
