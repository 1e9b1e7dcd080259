//! Fock-space truncation adequacy: compare a result at `dim` and `2·dim`.

use crate::error::{Error, Result};

/// Default relative-difference threshold for the doubling check.
pub const DOUBLING_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncationReport {
    pub dim: usize,
    pub relative_difference: f64,
}

/// Relative difference `‖x − y‖ / max(‖y‖, 1e-300)`, padding the shorter
/// vector with zeros.
pub fn relative_difference(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len().max(y.len());
    let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    let diff: f64 = (0..n).map(|i| (at(x, i) - at(y, i)).powi(2)).sum::<f64>().sqrt();
    let scale: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    diff / scale.max(1e-300)
}

/// Evaluates `eval` at `dim` and `2·dim` and requires the outputs to agree.
///
/// `eval` must return the quantities of interest in a dimension-independent
/// layout (observables, or vectors whose leading entries coincide).
pub fn check_doubling<F>(dim: usize, tol: f64, eval: F) -> Result<TruncationReport>
where
    F: Fn(usize) -> Result<Vec<f64>>,
{
    let coarse = eval(dim)?;
    let fine = eval(2 * dim)?;
    let relative_difference = relative_difference(&coarse, &fine);
    if relative_difference < tol {
        Ok(TruncationReport { dim, relative_difference })
    } else {
        Err(Error::Truncation { dim, relative_difference })
    }
}
