//! Dense complex linear algebra for finite-dimensional quantum states.

pub mod eigen;
pub mod matrix;
pub mod ops;
pub mod random;
pub mod state;

pub use eigen::{hermitian_eig, hermitian_eigvals, Eigen, HERMITIAN_REL_TOL};
pub use matrix::ComplexMatrix;
pub use ops::{
    kron, kron_all, partial_trace, partial_trace_matrix, partial_transpose, partial_transpose_range, spectral_fn,
    trace_norm, unitary_propagator,
};
pub use random::{random_density_matrix, random_hermitian, random_uniform, random_unitary};
pub use state::{DensityMatrix, HermitianObservable, POSITIVITY_FLOOR, TRACE_TOL};
