use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::capacity::correlation_capacity;
use super::entropy::von_neumann_entropy;
use super::measures::{
    classical_mutual_information, mutual_information, negativity_from_spectrum, Bipartition, MeasureKind,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hilbert::state::POSITIVITY_TOL;
use crate::hilbert::{
    hermitian_eigenvalues, partial_trace, partial_transpose_matrix, reduce_pure, spectral_decompose, DensityOperator,
    Space, StateVector, Subsystem, SystemLayout,
};

/// Absolute slack above a bound before a sample counts as a violation.
pub const VIOLATION_SLACK: f64 = 1e-9;

/// Initial terms below this are treated as an `AC:B` product form.
const PRODUCT_FORM_TOL: f64 = 1e-10;

/// Eigenvalues of a single-probe marginal at or below this are outside its
/// support.
pub const SUPPORT_TOL: f64 = 1e-14;

/// What a sample provides about the probes `A` and `B`.
pub struct ProbeMarginals {
    pub rho_a: DensityOperator,
    pub rho_b: DensityOperator,
    pub entropy_ab: f64,
    /// Diagonal of `ρ_AB` in the Fock product basis.
    pub populations: Vec<f64>,
}

/// A full `A⊗B⊗C` state that can be reduced to the probes.
pub trait TrajectoryState: Sync {
    fn layout_matches(&self, layout: &SystemLayout) -> bool;

    /// `I_{AC:B}` of this state.
    fn ac_b_mutual_information(&self) -> Result<f64>;

    fn probe_marginals(&self) -> Result<ProbeMarginals>;

    /// `(V_A ⊗ V_B)† ρ_AB (V_A ⊗ V_B)` for isometries `va`, `vb`.
    fn ab_compressed(&self, va: &DMatrix<C64>, vb: &DMatrix<C64>) -> Result<DMatrix<C64>>;
}

impl TrajectoryState for StateVector {
    fn layout_matches(&self, layout: &SystemLayout) -> bool {
        *self.space() == layout.space()
    }

    fn ac_b_mutual_information(&self) -> Result<f64> {
        Ok(2.0 * von_neumann_entropy(&reduce_pure(self, &[Subsystem::B])?)?)
    }

    fn probe_marginals(&self) -> Result<ProbeMarginals> {
        let dc = self.space().dim_of(Subsystem::C).unwrap_or(1);
        let populations = self
            .amplitudes()
            .as_slice()
            .chunks(dc)
            .map(|chunk| chunk.iter().map(|z| z.norm_sqr()).sum())
            .collect();
        Ok(ProbeMarginals {
            rho_a: reduce_pure(self, &[Subsystem::A])?,
            rho_b: reduce_pure(self, &[Subsystem::B])?,
            // The AB and C marginals of a pure state share their nonzero spectrum.
            entropy_ab: von_neumann_entropy(&reduce_pure(self, &[Subsystem::C])?)?,
            populations,
        })
    }

    fn ab_compressed(&self, va: &DMatrix<C64>, vb: &DMatrix<C64>) -> Result<DMatrix<C64>> {
        let dims = self.space().dims();
        let (da, db, dc) = (dims[0], dims[1], dims[2]);
        let amps = self.amplitudes();
        let (ra, rb) = (va.ncols(), vb.ncols());
        let vb_conj = vb.conjugate();
        let mut f = DMatrix::<C64>::zeros(ra * rb, dc);
        for c in 0..dc {
            let psi_c = DMatrix::from_fn(da, db, |a, b| amps[(a * db + b) * dc + c]);
            let phi = va.adjoint() * psi_c * &vb_conj;
            for i in 0..ra {
                for j in 0..rb {
                    f[(i * rb + j, c)] = phi[(i, j)];
                }
            }
        }
        Ok(&f * f.adjoint())
    }
}

impl TrajectoryState for DensityOperator {
    fn layout_matches(&self, layout: &SystemLayout) -> bool {
        *self.space() == layout.space()
    }

    fn ac_b_mutual_information(&self) -> Result<f64> {
        mutual_information(self, &Bipartition::ac_b())
    }

    fn probe_marginals(&self) -> Result<ProbeMarginals> {
        let rho_ab = partial_trace(self, &[Subsystem::A, Subsystem::B])?;
        Ok(ProbeMarginals {
            rho_a: partial_trace(&rho_ab, &[Subsystem::A])?,
            rho_b: partial_trace(&rho_ab, &[Subsystem::B])?,
            entropy_ab: von_neumann_entropy(&rho_ab)?,
            populations: rho_ab.matrix().diagonal().iter().map(|z| z.re).collect(),
        })
    }

    fn ab_compressed(&self, va: &DMatrix<C64>, vb: &DMatrix<C64>) -> Result<DMatrix<C64>> {
        let rho_ab = partial_trace(self, &[Subsystem::A, Subsystem::B])?;
        let w = va.kronecker(vb);
        Ok(w.adjoint() * rho_ab.matrix() * w)
    }
}

/// Orthonormal basis of the eigenvectors of `rho` above [`SUPPORT_TOL`].
fn support(rho: &DensityOperator) -> Result<DMatrix<C64>> {
    let spectrum = spectral_decompose(rho.matrix())?;
    let keep: Vec<usize> = (0..spectrum.values.len()).filter(|&i| spectrum.values[i] > SUPPORT_TOL).collect();
    Ok(spectrum.vectors.select_columns(&keep))
}

/// Negativity across `A:B`, evaluated on the product of the local supports.
///
/// Partial transposition commutes with local isometries, so restricting
/// `ρ_AB` to `supp ρ_A ⊗ supp ρ_B` leaves the nonzero spectrum of
/// `ρ^{T_A}` unchanged while shrinking the eigenproblem.
fn negativity_on_supports<S: TrajectoryState>(state: &S, marginals: &ProbeMarginals) -> Result<f64> {
    let va = support(&marginals.rho_a)?;
    let vb = support(&marginals.rho_b)?;
    let compressed = state.ab_compressed(&va, &vb)?;
    let space = Space::new(vec![(Subsystem::A, va.ncols()), (Subsystem::B, vb.ncols())])?;
    let pt = partial_transpose_matrix(&compressed, &space, &[Subsystem::A])?;
    negativity_from_spectrum(&hermitian_eigenvalues(&pt)?)
}

/// `I_{AC:B}(0)`, the offset in the entropic bounds.
pub fn initial_correlation_term(rho0: &DensityOperator) -> Result<f64> {
    mutual_information(rho0, &Bipartition::ac_b())
}

/// Measure values along a trajectory together with their bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationTrajectory {
    pub times: Vec<f64>,
    pub measures: Vec<MeasureKind>,
    pub values: BTreeMap<MeasureKind, Vec<f64>>,
    pub bounds: BTreeMap<MeasureKind, f64>,
    pub initial_correlation_term: f64,
    /// Time of the first sample above `bound + VIOLATION_SLACK`, if any.
    pub first_violation: BTreeMap<MeasureKind, Option<f64>>,
    pub notes: Vec<String>,
    pub dim_c: usize,
}

impl CorrelationTrajectory {
    pub fn violated(&self, kind: MeasureKind) -> bool {
        matches!(self.first_violation.get(&kind), Some(Some(_)))
    }

    pub fn first_violation_time(&self, kind: MeasureKind) -> Option<f64> {
        self.first_violation.get(&kind).copied().flatten()
    }

    pub fn bound(&self, kind: MeasureKind) -> Option<f64> {
        self.bounds.get(&kind).copied()
    }

    pub fn series(&self, kind: MeasureKind) -> Option<&[f64]> {
        self.values.get(&kind).map(Vec::as_slice)
    }

    pub fn max(&self, kind: MeasureKind) -> Option<f64> {
        self.series(kind).map(|v| v.iter().copied().fold(f64::NEG_INFINITY, f64::max))
    }

    pub fn is_violation(&self, kind: MeasureKind, sample: usize) -> bool {
        match (self.series(kind), self.bound(kind)) {
            (Some(v), Some(b)) => v[sample] > b + VIOLATION_SLACK,
            _ => false,
        }
    }
}

fn sample_values<S: TrajectoryState>(state: &S, layout: &SystemLayout, measures: &[MeasureKind]) -> Result<Vec<f64>> {
    let marginals = state.probe_marginals()?;
    let s_a = von_neumann_entropy(&marginals.rho_a)?;
    let s_b = von_neumann_entropy(&marginals.rho_b)?;
    let s_ab = marginals.entropy_ab;
    measures
        .iter()
        .map(|kind| {
            let v = match kind {
                MeasureKind::MutualInformation => s_a + s_b - s_ab,
                MeasureKind::DiscordLowerBound => s_b - s_ab,
                MeasureKind::ClassicalLowerBound => {
                    let space = Space::new(vec![(Subsystem::A, layout.dim_a), (Subsystem::B, layout.dim_b)])?;
                    classical_mutual_information(&marginals.populations, &space, &Bipartition::a_b())?
                }
                MeasureKind::Negativity => negativity_on_supports(state, &marginals)?,
            };
            if !v.is_finite() {
                return Err(Error::Eigen(format!("{kind} evaluated to {v}")));
            }
            if *kind == MeasureKind::Negativity && v < -POSITIVITY_TOL {
                return Err(Error::Positivity { min_eigenvalue: v });
            }
            Ok(v)
        })
        .collect()
}

/// Evaluates `measures` across the `A:B` cut of every sample and attaches the
/// mediator-capacity bounds.
pub fn evaluate_trajectory<S: TrajectoryState>(
    times: &[f64],
    states: &[S],
    layout: &SystemLayout,
    measures: &[MeasureKind],
    exec: Execution,
) -> Result<CorrelationTrajectory> {
    if states.is_empty() {
        return Err(Error::invalid("trajectory is empty"));
    }
    if times.len() != states.len() {
        return Err(Error::DimensionMismatch { expected: states.len(), found: times.len() });
    }
    if measures.is_empty() {
        return Err(Error::invalid("no measures requested"));
    }
    if let Some(bad) = states.iter().position(|s| !s.layout_matches(layout)) {
        return Err(Error::invalid(format!("sample {bad} does not live on the layout {}", layout.space())));
    }
    let mut kinds = measures.to_vec();
    kinds.sort();
    kinds.dedup();

    let initial = states[0].ac_b_mutual_information()?;
    let per_sample = exec.try_map(states, |s| sample_values(s, layout, &kinds))?;

    let mut values = BTreeMap::new();
    let mut bounds = BTreeMap::new();
    let mut first_violation = BTreeMap::new();
    let mut notes = Vec::new();
    for (j, &kind) in kinds.iter().enumerate() {
        let series: Vec<f64> = per_sample.iter().map(|row| row[j]).collect();
        let capacity = correlation_capacity(kind, layout.dim_c)?;
        let bound = if kind.is_entropic() { initial + capacity } else { capacity };
        let first = series.iter().position(|&v| v > bound + VIOLATION_SLACK).map(|i| times[i]);
        if kind == MeasureKind::Negativity && initial > PRODUCT_FORM_TOL {
            notes.push(format!(
                "negativity bound {bound} assumes an initial state of the form rho_AC x rho_B; \
                 this state has I_AC:B(0) = {initial:.6}, so a crossing is not a proof of non-decomposability"
            ));
        }
        values.insert(kind, series);
        bounds.insert(kind, bound);
        first_violation.insert(kind, first);
    }

    Ok(CorrelationTrajectory {
        times: times.to_vec(),
        measures: kinds,
        values,
        bounds,
        initial_correlation_term: initial,
        first_violation,
        notes,
        dim_c: layout.dim_c,
    })
}
