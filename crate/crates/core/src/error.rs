use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("undefined: empty product has no pole (N must be at least 1)")]
    EmptyProduct,

    #[error("coefficient index l = {l} out of range 1..={n}")]
    Range { l: u32, n: u32 },

    #[error("series is not a unit: constant term is zero")]
    NotAUnit,

    #[error("argument is a pole of the product: {0}")]
    Pole(String),

    #[error("outside supported domain: {0}")]
    Domain(String),

    #[error("outside convergence region: {0}")]
    Convergence(String),

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("precision of {bits} bits is below the minimum of {min}")]
    Precision { bits: u32, min: u32 },

    #[error("Newton iteration failed: {0}")]
    NoConvergence(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical check failed: {0}")]
    Check(String),
}
