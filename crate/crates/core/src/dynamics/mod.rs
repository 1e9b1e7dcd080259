//! Hamiltonians of the form `H_AC + H_BC` and the three evolution engines:
//! exact spectral propagation, Trotter products, and Lindblad integration.

pub mod grid;
pub mod hamiltonian;
pub mod lindblad;
pub mod trotter;
pub mod unitary;

pub use grid::TimeGrid;
pub use hamiltonian::{
    build_dipole_hamiltonian, build_jc_hamiltonian, commutator_norm, custom_bipartite_sum,
    total_excitation_operator, CouplingKind, HamiltonianSpec,
};
pub use lindblad::{default_substeps, lindblad_evolve, lindblad_evolve_with, JumpOperator, LindbladGenerator, LindbladSpec};
pub use trotter::{trotter_evolve, PieceSpectra};
pub use unitary::{evolve_unitary, Propagator};

/// Default field truncation for dipole–dipole runs: `8·(1 + ⌈g·t_max⌉)`.
pub fn dipole_default_field_dim(gt_max: f64) -> usize {
    8 * (1 + gt_max.max(0.0).ceil() as usize)
}
