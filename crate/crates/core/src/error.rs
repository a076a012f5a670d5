use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix exponential out of floating point range (norm of tA = {norm:e})")]
    Overflow { norm: f64 },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("invalid switching law: {0}")]
    InvalidLaw(String),

    #[error("switching law is not periodizable (first and last modes coincide)")]
    NotPeriodizable,

    #[error("mode {mode} has an infinite upper bound; run `cut-tail --simplify` or supply finite bounds")]
    InfiniteBound { mode: usize },

    #[error("linear program failed after {iterations} pivots: {reason}")]
    LpFailure { iterations: usize, reason: String },

    #[error("no valid upper bound at N = {n}: (M-m)^2 |A^2|_P = {lhs:e} >= 8 N^2")]
    NuDomain { n: usize, lhs: f64 },

    #[error("degenerate polytope in space {space}: hull is not full-dimensional")]
    DegeneratePolytope { space: usize },

    #[error("matrix is not stable (spectral abscissa {abscissa:e} >= 0)")]
    NotStable { abscissa: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("missing artifact: {0}")]
    MissingArtifact(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
