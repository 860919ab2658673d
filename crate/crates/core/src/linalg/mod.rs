//! Dense complex Hermitian linear algebra.

pub mod eigen;
pub mod matrix;
pub mod observable;
pub mod spectral;

pub use eigen::{jacobi_eigh, Eigen};
pub use matrix::{dot, vec_norm, ComplexMatrix, C64};
pub use observable::{HermitianObservable, UnitaryMap};
pub use spectral::{
    apply_function, commutator_norm, default_group_tol, eigendecompose, loewner_leq, SpectralDecomposition,
    SpectralGroup,
};
