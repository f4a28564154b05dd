use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field {0} is not supported as a base field (supported: Q and imaginary quadratic fields of discriminant -3, -4, -7, -8, -11)")]
    UnsupportedBaseField(String),

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate lattice: {0}")]
    DegenerateLattice(String),

    #[error("ill-conditioned input: {0}")]
    IllConditioned(String),

    /// Evaluation point lies within the pole-proximity radius of a simple pole.
    #[error("s = {s} is at a simple pole (residue {residue})")]
    Pole { s: Complex64, residue: Complex64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("enumeration would visit {requested} points, above the cap of {cap}")]
    TooManyPoints { requested: u64, cap: u64 },

    #[error("direct lattice sum requires Re(s) > {min_re}, got {s}; use the Fourier expansion path")]
    DirectSumDomain { s: Complex64, min_re: f64 },

    #[error("partial zeta cutoff too small: {0}")]
    CutoffTooSmall(String),

    #[error("unit data check failed: {0}")]
    UnitDataMismatch(String),

    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
