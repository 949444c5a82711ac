use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// Variants are grouped by the process exit code the CLI maps them to.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("{what} exceeds configured cap ({value} > {cap})")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("operands live over different coefficient fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial {0} is not irreducible over Q")]
    Reducible(String),

    #[error("isolation rectangle does not certify a unique root: {0}")]
    Isolation(String),

    #[error("left ideal is not maximal: {0}")]
    NotMaximal(String),

    #[error("left ideal is not proper")]
    NotProper,

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("zero module has no irreducibility witness")]
    ZeroModule,

    #[error("embedding mismatch: {0}")]
    Embedding(String),

    #[error("commutant is not commutative; splitting genuine division algebras is beyond desk scale")]
    NonCommutativeCommutant,

    #[error("beyond desk scale: {0}")]
    BeyondDeskScale(String),

    #[error("coefficient field must contain sqrt(q) = sqrt({q}) for a non-simply-connected group")]
    FieldConstraint { q: u64 },

    #[error("extension does not contain the residue field: {0}")]
    NotContained(String),

    #[error("extension is not Galois over the base: {0}")]
    NotGalois(String),

    #[error("inconsistent character: {0}")]
    InconsistentCharacter(String),

    #[error("internal consistency check failed: {0}")]
    Mismatch(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } | Error::BeyondDeskScale(_) => 3,
            Error::Mismatch(_) => 4,
            Error::NonCommutativeCommutant => 5,
            Error::FieldConstraint { .. } => 6,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
