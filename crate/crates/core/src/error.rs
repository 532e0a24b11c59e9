use thiserror::Error;

/// Errors raised by the symbol, operator and kernel layers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("degenerate pair: {}", reasons.join(", "))]
    Degenerate { reasons: Vec<String> },

    #[error("ambiguous null space: singular value gap below {gap} around threshold {threshold:e}")]
    Ambiguous {
        threshold: f64,
        gap: f64,
        singular_values: Vec<f64>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    #[error("symbol has a zero on the unit circle (distance {distance:e})")]
    NotInvertible { distance: f64 },

    #[error("denominator too close to the unit circle (min |den| = {min_modulus:e})")]
    Conditioning { min_modulus: f64 },

    #[error("zero {modulus} not inside the open disk (margin {margin:e})")]
    ZeroOutsideDisk { modulus: f64, margin: f64 },

    #[error("symbol is not inner (max ||theta| - 1| = {deviation:e})")]
    NotInner { deviation: f64 },

    #[error("vector is not a kernel element (residual {residual:e})")]
    Membership { residual: f64 },

    #[error("root finding failed: {0}")]
    Roots(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
