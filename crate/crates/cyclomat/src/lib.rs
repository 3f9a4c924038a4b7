//! Exact evaluation of character sums over finite fields (Gauss sums, Jacobi
//! sums, Greene binomial coefficients, Gaussian hypergeometric values) and
//! machine verification of the determinant identities satisfied by the
//! associated cyclotomic matrices.
//!
//! Two independent value backends are provided and cross-checked:
//!
//! * an exact one — elements of the cyclotomic field Q(zeta_m) represented in
//!   the power basis of Q[x]/Phi_m(x) with big-rational coordinates;
//! * a numeric one — fixed-point complex arithmetic at a configurable bit
//!   precision (default 192) for quantities that live outside a single
//!   cyclotomic field, such as sqrt(q).
//!
//! The `theorems` module contains one verifier per identity; each computes
//! both sides by maximally independent code paths and emits a structured
//! [`report::VerificationReport`]. The `cli` module drives single checks and
//! bulk parameter sweeps with JSON/CSV report output.

pub mod arith;
pub mod char_sums;
pub mod cli;
pub mod cyclotomic;
pub mod finite_field;
pub mod matrices;
pub mod report;
pub mod theorems;

pub use cyclotomic::complex::ComplexApprox;
pub use cyclotomic::CycNum;
pub use finite_field::{FieldElement, FiniteField};
pub use report::{Backend, Status, VerificationReport};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-integral coefficients: {0}")]
    NonIntegral(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default bit precision for the numeric backend.
pub const DEFAULT_PRECISION: u32 = 192;

/// Default relative tolerance for numeric identity checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Environment variable overriding the default numeric precision.
pub const PRECISION_ENV_VAR: &str = "CYCLOMAT_PRECISION";

/// Resolves the effective precision: an explicit request wins, then the
/// environment override, then the built-in default.
pub fn effective_precision(requested: Option<u32>) -> u32 {
    if let Some(p) = requested {
        return p.max(53);
    }
    if let Ok(v) = std::env::var(PRECISION_ENV_VAR) {
        if let Ok(p) = v.parse::<u32>() {
            return p.max(53);
        }
    }
    DEFAULT_PRECISION
}
