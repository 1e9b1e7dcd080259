//! Lindblad master equation with local dissipators, integrated by classical
//! fixed-step RK4 on the density matrix.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::grid::TimeGrid;
use super::hamiltonian::HamiltonianSpec;
use crate::error::{Error, Result};
use crate::hilbert::state::POSITIVITY_TOL;
use crate::hilbert::{bosonic_annihilation, number_operator, qubit_ladder, DensityOperator, OperatorMatrix, Subsystem};

/// One `Q^X_k`, acting on subsystem `X` only, scaled by `√rate`.
#[derive(Clone, Debug)]
pub struct JumpOperator {
    operator: OperatorMatrix,
    subsystem: Subsystem,
    rate: f64,
}

impl JumpOperator {
    pub fn new(operator: OperatorMatrix, subsystem: Subsystem, rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate >= 0.0) {
            return Err(Error::invalid(format!("jump rate must be finite and non-negative, got {rate}")));
        }
        let operator = operator.on(subsystem)?;
        Ok(JumpOperator { operator, subsystem, rate })
    }

    /// Annihilation operator for a field, `σ₋` for a qubit mediator.
    pub fn lowering(subsystem: Subsystem, dim: usize, rate: f64) -> Result<Self> {
        let op = if subsystem == Subsystem::C && dim == 2 {
            qubit_ladder().1
        } else {
            bosonic_annihilation(dim)?
        };
        JumpOperator::new(op, subsystem, rate)
    }

    /// Number operator, i.e. pure dephasing in the Fock (or qubit) basis.
    pub fn dephasing(subsystem: Subsystem, dim: usize, rate: f64) -> Result<Self> {
        JumpOperator::new(number_operator(dim)?, subsystem, rate)
    }

    pub fn subsystem(&self) -> Subsystem {
        self.subsystem
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn operator(&self) -> &OperatorMatrix {
        &self.operator
    }
}

#[derive(Clone, Debug)]
pub struct LindbladSpec {
    pub hamiltonian: HamiltonianSpec,
    pub jumps: Vec<JumpOperator>,
}

impl LindbladSpec {
    pub fn new(hamiltonian: HamiltonianSpec, jumps: Vec<JumpOperator>) -> Self {
        LindbladSpec { hamiltonian, jumps }
    }
}

/// `ρ ↦ −i(H_eff ρ − ρ H_eff†) + Σ Q ρ Q†` with `H_eff = H − (i/2) Σ Q†Q`.
#[derive(Clone, Debug)]
pub struct LindbladGenerator {
    h_eff: DMatrix<C64>,
    jumps: Vec<DMatrix<C64>>,
    scale: f64,
}

fn one_norm(m: &DMatrix<C64>) -> f64 {
    m.column_iter().map(|c| c.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

impl LindbladGenerator {
    pub fn new(spec: &LindbladSpec) -> Result<Self> {
        let layout = spec.hamiltonian.layout();
        let h = spec.hamiltonian.full_matrix()?;
        let n = h.nrows();
        let mut decay = DMatrix::<C64>::zeros(n, n);
        let mut jumps = Vec::with_capacity(spec.jumps.len());
        let mut scale = one_norm(&h);
        for j in &spec.jumps {
            let q = layout.embed(j.operator())?.into_matrix() * C64::new(j.rate.sqrt(), 0.0);
            let qq = q.adjoint() * &q;
            scale += one_norm(&qq);
            decay += qq;
            jumps.push(q);
        }
        let h_eff = h - decay * C64::new(0.0, 0.5);
        Ok(LindbladGenerator { h_eff, jumps, scale })
    }

    pub fn apply(&self, rho: &DMatrix<C64>) -> DMatrix<C64> {
        let left = &self.h_eff * rho;
        let mut out = (&left - left.adjoint()) * C64::new(0.0, -1.0);
        for q in &self.jumps {
            out += q * rho * q.adjoint();
        }
        out
    }

    /// Crude bound on the generator's rate of change, used to pick the step.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    fn rk4_step(&self, rho: &DMatrix<C64>, h: f64) -> DMatrix<C64> {
        let hc = C64::new(h, 0.0);
        let k1 = self.apply(rho);
        let k2 = self.apply(&(rho + &k1 * (hc * 0.5)));
        let k3 = self.apply(&(rho + &k2 * (hc * 0.5)));
        let k4 = self.apply(&(rho + &k3 * hc));
        rho + (k1 + (k2 + k3) * C64::new(2.0, 0.0) + k4) * (hc / 6.0)
    }
}

/// RK4 substeps per grid interval such that `h · scale ≤ 0.005`.
pub fn default_substeps(generator: &LindbladGenerator, grid: &TimeGrid) -> usize {
    let dt = grid.step();
    if dt == 0.0 {
        return 1;
    }
    let h_max = 0.005 / generator.scale().max(1e-12);
    ((dt / h_max).ceil() as usize).max(1)
}

pub fn lindblad_evolve(rho0: &DensityOperator, spec: &LindbladSpec, grid: &TimeGrid) -> Result<Vec<DensityOperator>> {
    let generator = LindbladGenerator::new(spec)?;
    let substeps = default_substeps(&generator, grid);
    lindblad_evolve_with(rho0, &generator, grid, substeps)
}

/// Trajectory at the grid samples with a fixed number of RK4 substeps per
/// interval. Every sample is checked for positivity.
pub fn lindblad_evolve_with(
    rho0: &DensityOperator,
    generator: &LindbladGenerator,
    grid: &TimeGrid,
    substeps: usize,
) -> Result<Vec<DensityOperator>> {
    let n = generator.h_eff.nrows();
    if rho0.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: rho0.dim() });
    }
    if substeps == 0 {
        return Err(Error::invalid("at least one RK4 substep per interval is required"));
    }
    let times = grid.samples();
    let h = grid.step() / substeps as f64;
    let mut rho = rho0.matrix().clone();
    let mut out = Vec::with_capacity(times.len());
    for (k, &t) in times.iter().enumerate() {
        if k > 0 {
            for _ in 0..substeps {
                rho = generator.rk4_step(&rho, h);
            }
        }
        let min = DensityOperator::from_parts(rho.clone(), rho0.space().clone())
            .eigenvalues()?
            .first()
            .copied()
            .unwrap_or(0.0);
        if min < -POSITIVITY_TOL || !min.is_finite() {
            return Err(Error::IntegratorFailure { time: t, min_eigenvalue: min });
        }
        out.push(DensityOperator::from_parts(rho.clone(), rho0.space().clone()));
    }
    Ok(out)
}
