//! Product-formula evolution `(e^{−iΔt H_BC} e^{−iΔt H_AC})^n`.
//!
//! Each factor is exponentiated once on its own two-factor space and applied
//! blockwise, so a step costs two small matrix products instead of a
//! full-space matrix-vector product.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::hamiltonian::HamiltonianSpec;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hilbert::{spectral_decompose, Spectrum, StateVector, Subsystem, SystemLayout};

/// Applies a unitary on `probe⊗C` to a full A⊗B⊗C amplitude vector.
fn apply_pair(layout: &SystemLayout, probe: Subsystem, u: &DMatrix<C64>, psi: &DVector<C64>) -> DVector<C64> {
    let (da, db, dc) = (layout.dim_a, layout.dim_b, layout.dim_c);
    let mut out = DVector::zeros(psi.len());
    match probe {
        Subsystem::A => {
            // Columns are spectator B levels; rows run over (a, c).
            let block = DMatrix::from_fn(da * dc, db, |ac, b| psi[(ac / dc * db + b) * dc + ac % dc]);
            let moved = u * block;
            for b in 0..db {
                for ac in 0..da * dc {
                    out[(ac / dc * db + b) * dc + ac % dc] = moved[(ac, b)];
                }
            }
        }
        Subsystem::B => {
            // For fixed a, the (b, c) block is contiguous.
            let block = DMatrix::from_fn(db * dc, da, |bc, a| psi[a * db * dc + bc]);
            let moved = u * block;
            for a in 0..da {
                for bc in 0..db * dc {
                    out[a * db * dc + bc] = moved[(bc, a)];
                }
            }
        }
        Subsystem::C => unreachable!("pieces couple a probe to the mediator"),
    }
    out
}

/// Spectra of the two pieces, each on its own pair space.
#[derive(Clone, Debug)]
pub struct PieceSpectra {
    layout: SystemLayout,
    ac: Spectrum,
    bc: Spectrum,
}

impl PieceSpectra {
    pub fn new(spec: &HamiltonianSpec) -> Result<Self> {
        Ok(PieceSpectra {
            layout: *spec.layout(),
            ac: spectral_decompose(spec.h_ac().matrix())?,
            bc: spectral_decompose(spec.h_bc().matrix())?,
        })
    }

    fn check(&self, psi: &StateVector) -> Result<()> {
        if psi.space() != &self.layout.space() {
            return Err(Error::DimensionMismatch { expected: self.layout.total_dim(), found: psi.dim() });
        }
        Ok(())
    }

    /// `e^{−it H_BC} e^{−it H_AC} ψ`: exact when the pieces commute.
    pub fn factorized(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        self.check(psi)?;
        let after_ac = apply_pair(&self.layout, Subsystem::A, &self.ac.unitary(t), psi.amplitudes());
        let out = apply_pair(&self.layout, Subsystem::B, &self.bc.unitary(t), &after_ac);
        Ok(StateVector::from_parts(out, psi.space().clone()))
    }

    pub fn factorized_trajectory(&self, psi0: &StateVector, times: &[f64], exec: Execution) -> Result<Vec<StateVector>> {
        exec.try_map(times, |&t| self.factorized(psi0, t))
    }

    pub fn trotter(&self, psi: &StateVector, t: f64, n: usize) -> Result<StateVector> {
        if n == 0 {
            return Err(Error::invalid("Trotter step count must be at least 1"));
        }
        self.check(psi)?;
        let dt = t / n as f64;
        let u_ac = self.ac.unitary(dt);
        let u_bc = self.bc.unitary(dt);
        let mut v = psi.amplitudes().clone();
        for _ in 0..n {
            v = apply_pair(&self.layout, Subsystem::A, &u_ac, &v);
            v = apply_pair(&self.layout, Subsystem::B, &u_bc, &v);
        }
        Ok(StateVector::from_parts(v, psi.space().clone()))
    }
}

pub fn trotter_evolve(psi0: &StateVector, spec: &HamiltonianSpec, t: f64, n: usize) -> Result<StateVector> {
    if n == 0 {
        return Err(Error::invalid("Trotter step count must be at least 1"));
    }
    PieceSpectra::new(spec)?.trotter(psi0, t, n)
}
