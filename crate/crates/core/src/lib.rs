//! Variance order on finite-dimensional quantum observables.
//!
//! `A ⪯ B` means `Delta_x(A) <= Delta_x(B)` for every pure state `x`. For Hermitian
//! matrices this holds exactly when `A = f(B)` for a function `f` that is
//! 1-Lipschitz on the spectrum of `B`. [`order::decide_order`] decides the relation
//! and returns either that `f` as a certificate or a pure state on which the
//! variance of `A` exceeds that of `B`.

// `!(x > tol)` deliberately treats NaN as a failed check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linalg;
pub mod order;
pub mod random;
pub mod state;
pub mod structure;

pub use error::{Error, Result};
pub use linalg::{
    apply_function, commutator_norm, eigendecompose, loewner_leq, ComplexMatrix, HermitianObservable,
    SpectralDecomposition, UnitaryMap, C64,
};
pub use order::{
    canonical_representative, check_state_order, class_equal, decide_order, extract_function, mcshane_extend,
    witness_search, FunctionTable, LipschitzExtension, OracleConfig, OrderVerdict,
};
pub use state::{
    approx_eigen_sandwich, born_measure, expectation, maximal_deviation, measure_variance, pushforward,
    superposition_variance, variance, variance_defect, BornMeasure, DensityState, PureState, State,
};
pub use structure::{
    joint_upper_bound, q_matrix, reconstruct_metric, two_point_lower_set, two_spectrum_detector, verify_automorphism,
    AutomorphismSpec, QMatrix,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
