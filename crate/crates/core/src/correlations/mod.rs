//! Correlation measures between the probes, mediator capacities, bounds
//! along a trajectory, and the dimension witness.

pub mod capacity;
pub mod entropy;
pub mod measures;
pub mod trajectory;
pub mod witness;

pub use capacity::{correlation_capacity, CapacityTable};
pub use entropy::{entropy_bits, von_neumann_entropy};
pub use measures::{
    classical_lower_bound, classical_lower_bound_in_bases, discord_lower_bound, evaluate, mutual_information,
    negativity, Bipartition, MeasureKind,
};
pub use trajectory::{
    evaluate_trajectory, initial_correlation_term, CorrelationTrajectory, TrajectoryState, VIOLATION_SLACK,
};
pub use witness::dimension_witness;
