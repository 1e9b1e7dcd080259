//! Finite-dimensional Hilbert-space primitives: labelled tensor spaces,
//! states, operators, partial trace/transpose and spectral decomposition.

pub mod layout;
pub mod operators;
pub mod partial;
pub mod spectral;
pub mod state;
pub mod truncation;

pub use layout::{Space, Subsystem, SystemLayout};
pub use operators::{
    bosonic_annihilation, displacement, max_entangled_state, number_operator, qubit_ladder, sigma_x,
};
pub use partial::{partial_trace, partial_transpose, partial_transpose_matrix, reduce_pure};
pub use spectral::{hermitian_eigenvalues, spectral_decompose, Spectrum};
pub use state::{tensor_product, ActsOn, DensityOperator, OperatorMatrix, StateVector, Tensor};
