use super::hamiltonian::HamiltonianSpec;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hilbert::{spectral_decompose, Spectrum, StateVector};

/// Exact propagator `exp(−iHt)` from one spectral decomposition of the full
/// Hamiltonian, reusable for any number of times.
#[derive(Clone, Debug)]
pub struct Propagator {
    spectrum: Spectrum,
    dim: usize,
}

impl Propagator {
    pub fn new(spec: &HamiltonianSpec) -> Result<Self> {
        let h = spec.full_matrix()?;
        let dim = h.nrows();
        Ok(Propagator { spectrum: spectral_decompose(&h)?, dim })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn evolve(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        if psi.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: psi.dim() });
        }
        let out = self.spectrum.evolve(psi.amplitudes(), t);
        Ok(StateVector::from_parts(out, psi.space().clone()))
    }

    /// States at every requested time; samples are independent.
    pub fn trajectory(&self, psi0: &StateVector, times: &[f64], exec: Execution) -> Result<Vec<StateVector>> {
        exec.try_map(times, |&t| self.evolve(psi0, t))
    }
}

pub fn evolve_unitary(psi0: &StateVector, spec: &HamiltonianSpec, t: f64) -> Result<StateVector> {
    let expected = spec.layout().total_dim();
    if psi0.dim() != expected || psi0.space() != &spec.layout().space() {
        return Err(Error::DimensionMismatch { expected, found: psi0.dim() });
    }
    Propagator::new(spec)?.evolve(psi0, t)
}
