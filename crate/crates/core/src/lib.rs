//! Numerical toolkit for probe–mediator–probe systems: tensor-product
//! Hilbert spaces, unitary and open dynamics, and bounds on how much
//! correlation two probes can build up through a low-dimensional mediator.

pub mod analytic;
pub mod correlations;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod hilbert;

pub use error::{Error, Result};
pub use exec::Execution;
