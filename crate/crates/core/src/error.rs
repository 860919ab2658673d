use thiserror::Error;

use crate::state::PureState;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |M - M^H| = {deviation:e} exceeds {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("matrix is not unitary: max |U^H U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("function table is undefined at eigenvalue {lambda}")]
    Domain { lambda: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid function table: {0}")]
    InvalidTable(String),

    #[error("table is not {constant}-Lipschitz on the pair ({lo}, {hi}): slope {slope}")]
    NotLipschitz {
        lo: f64,
        hi: f64,
        slope: f64,
        constant: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("variance order does not hold (margin {margin:e} at the witness state)")]
    OrderDoesNotHold { witness: PureState, margin: f64 },

    #[error("observables do not commute: ||AB - BA||_F = {norm:e}")]
    NotCommuting { norm: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("q-matrix is not generated by any spectrum: {0}")]
    Reconstruction(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for failures of the crate's own cross-checks rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistent(_) | Error::NoConvergence { .. })
    }
}
