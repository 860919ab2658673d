//! Order-theoretic structure: joint upper bounds, two-point lower sets, q-matrices
//! and verification of order automorphisms.

pub mod automorphism;
pub mod lower_set;
pub mod qmatrix;
pub mod two_spectrum;
pub mod upper_bound;

pub use automorphism::{
    sample_pair, verify_automorphism, verify_map, AutomorphismReport, AutomorphismSpec, Counterexample,
};
pub use lower_set::{classify_two_point, lower_set_correspondents, two_point_lower_set, TwoPointFamily};
pub use qmatrix::{q_matrix, reconstruct_metric, MetricReconstruction, QMatrix};
pub use two_spectrum::{hinge_pair, two_spectrum_by_order, two_spectrum_detector};
pub use upper_bound::{joint_upper_bound, JointUpperBound};
