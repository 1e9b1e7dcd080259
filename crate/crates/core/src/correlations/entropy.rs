use crate::error::{Error, Result};
use crate::hilbert::state::POSITIVITY_TOL;
use crate::hilbert::DensityOperator;

/// `−Σ p log₂ p` over a spectrum or probability vector.
///
/// Values in `[−1e-10, 0)` are clipped to zero; anything more negative is a
/// positivity violation.
pub fn entropy_bits(weights: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &p in weights {
        if !p.is_finite() || p < -POSITIVITY_TOL {
            return Err(Error::Positivity { min_eigenvalue: p });
        }
        if p > 0.0 {
            s -= p * p.log2();
        }
    }
    Ok(s.max(0.0))
}

pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    entropy_bits(&rho.eigenvalues()?)
}
