use std::fmt::Write as _;
use std::io::{self, Write};

use mediated_core::correlations::{evaluate_trajectory, CorrelationTrajectory, VIOLATION_SLACK};
use mediated_core::dynamics::lindblad::default_substeps;
use mediated_core::dynamics::{
    build_dipole_hamiltonian, build_jc_hamiltonian, commutator_norm, dipole_default_field_dim, lindblad_evolve_with,
    HamiltonianSpec, JumpOperator, LindbladGenerator, LindbladSpec, PieceSpectra, Propagator, TimeGrid,
};
use mediated_core::hilbert::truncation::{relative_difference, TruncationReport, DOUBLING_TOL};
use mediated_core::hilbert::{StateVector, SystemLayout};
use mediated_core::{Error, Execution, Result};
use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::config::{Coupling, FieldDim, InitialState, JumpKind, ScenarioConfig, MEDIATOR_DIM};

/// Commutator norms at or below this count as commuting pieces.
pub const COMMUTING_TOL: f64 = 1e-12;

/// Largest change in any reported value tolerated when the Lindblad step is halved.
pub const STEP_HALVING_TOL: f64 = 1e-6;

const MAX_STEP_HALVINGS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Product of exact piece exponentials; exact when `[H_AC, H_BC] = 0`.
    Factorized,
    /// Spectral decomposition of the full Hamiltonian.
    Spectral,
    /// RK4 on the Lindblad master equation.
    Lindblad,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Factorized => "factorized",
            Engine::Spectral => "spectral",
            Engine::Lindblad => "lindblad",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    /// Sample times in units of `1/g`.
    pub gt: Vec<f64>,
    pub trajectory: CorrelationTrajectory,
    pub field_dim: usize,
    pub engine: Engine,
    /// Doubling check, when the truncation is not exact by excitation conservation.
    pub truncation: Option<TruncationReport>,
    /// RK4 substeps per grid interval, for Lindblad runs.
    pub substeps: Option<usize>,
}

/// Field truncation for a scenario: `N+1` for Jaynes–Cummings (exact by
/// excitation conservation), the growth rule for dipole coupling.
pub fn resolve_field_dim(cfg: &ScenarioConfig) -> usize {
    let floor = cfg.initial_state.max_field_occupation() + 1;
    match cfg.field_dim {
        FieldDim::Fixed(d) => d,
        FieldDim::Auto => match cfg.coupling {
            Coupling::JaynesCummings => (cfg.initial_state.max_excitation() + 1).max(floor).max(2),
            Coupling::DipoleDipole => dipole_default_field_dim(cfg.t_max_gt).max(floor),
        },
    }
}

/// Whether `field_dim` is exact rather than an approximation to be checked.
fn truncation_is_exact(cfg: &ScenarioConfig, field_dim: usize) -> bool {
    cfg.coupling == Coupling::JaynesCummings && field_dim > cfg.initial_state.max_excitation()
}

pub fn initial_state(state: &InitialState, layout: SystemLayout) -> Result<StateVector> {
    let mut amps = DVector::from_element(layout.total_dim(), C64::new(0.0, 0.0));
    for ([a, b, c], amp) in state.terms() {
        if a >= layout.dim_a || b >= layout.dim_b || c >= layout.dim_c {
            return Err(Error::InvalidArgument(format!(
                "occupation {a}{b}{c} does not fit field dimension {}",
                layout.dim_a
            )));
        }
        amps[layout.basis_index(a, b, c)] += amp;
    }
    StateVector::normalized(amps, layout.space())
}

fn hamiltonian(cfg: &ScenarioConfig, layout: SystemLayout) -> Result<HamiltonianSpec> {
    match cfg.coupling {
        Coupling::JaynesCummings => build_jc_hamiltonian(layout, cfg.g),
        Coupling::DipoleDipole => build_dipole_hamiltonian(layout, cfg.g),
    }
}

fn jumps(cfg: &ScenarioConfig, layout: SystemLayout) -> Result<Vec<JumpOperator>> {
    cfg.lindblad
        .iter()
        .map(|term| {
            let dim = layout.dim(term.subsystem);
            match term.kind {
                JumpKind::Lowering => JumpOperator::lowering(term.subsystem, dim, term.rate),
                JumpKind::Dephasing => JumpOperator::dephasing(term.subsystem, dim, term.rate),
            }
        })
        .collect()
}

fn all_values(t: &CorrelationTrajectory) -> Vec<f64> {
    t.measures.iter().flat_map(|k| t.values[k].iter().copied()).collect()
}

fn max_abs_change(a: &CorrelationTrajectory, b: &CorrelationTrajectory) -> f64 {
    all_values(a).iter().zip(all_values(b)).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// One simulation at a fixed truncation.
fn simulate(cfg: &ScenarioConfig, field_dim: usize, exec: Execution) -> Result<(CorrelationTrajectory, Engine, Option<usize>)> {
    let layout = SystemLayout::new(field_dim, field_dim, MEDIATOR_DIM)?;
    let spec = hamiltonian(cfg, layout)?;
    let psi0 = initial_state(&cfg.initial_state, layout)?;
    let gt = TimeGrid::new(cfg.t_max_gt, cfg.n_points)?.samples();
    let times: Vec<f64> = gt.iter().map(|x| x / cfg.g).collect();

    if cfg.lindblad.is_empty() {
        let (states, engine) = if commutator_norm(&spec)? <= COMMUTING_TOL {
            (PieceSpectra::new(&spec)?.factorized_trajectory(&psi0, &times, exec)?, Engine::Factorized)
        } else {
            (Propagator::new(&spec)?.trajectory(&psi0, &times, exec)?, Engine::Spectral)
        };
        let traj = evaluate_trajectory(&gt, &states, &layout, &cfg.measures, exec)?;
        return Ok((traj, engine, None));
    }

    let generator = LindbladGenerator::new(&LindbladSpec::new(spec, jumps(cfg, layout)?))?;
    let grid = TimeGrid::new(cfg.t_max_gt / cfg.g, cfg.n_points)?;
    let rho0 = psi0.density();
    let run = |substeps: usize| -> Result<CorrelationTrajectory> {
        let states = lindblad_evolve_with(&rho0, &generator, &grid, substeps)?;
        evaluate_trajectory(&gt, &states, &layout, &cfg.measures, exec)
    };
    let mut substeps = default_substeps(&generator, &grid);
    let mut coarse = run(substeps)?;
    let mut max_change = f64::INFINITY;
    for _ in 0..MAX_STEP_HALVINGS {
        let fine = run(2 * substeps)?;
        max_change = max_abs_change(&coarse, &fine);
        substeps *= 2;
        if max_change < STEP_HALVING_TOL {
            return Ok((fine, Engine::Lindblad, Some(substeps)));
        }
        coarse = fine;
    }
    Err(Error::StepConvergence { substeps, max_change })
}

/// Runs a scenario, checking the field truncation by doubling unless it is
/// exact.
pub fn run_scenario(cfg: &ScenarioConfig, exec: Execution) -> Result<RunOutput> {
    let field_dim = resolve_field_dim(cfg);
    let (trajectory, engine, substeps) = simulate(cfg, field_dim, exec)?;
    let truncation = if truncation_is_exact(cfg, field_dim) {
        None
    } else {
        let (fine, _, _) = simulate(cfg, 2 * field_dim, exec)?;
        let relative = relative_difference(&all_values(&trajectory), &all_values(&fine));
        if relative >= DOUBLING_TOL {
            return Err(Error::Truncation { dim: field_dim, relative_difference: relative });
        }
        Some(TruncationReport { dim: field_dim, relative_difference: relative })
    };
    let gt = TimeGrid::new(cfg.t_max_gt, cfg.n_points)?.samples();
    Ok(RunOutput { gt, trajectory, field_dim, engine, truncation, substeps })
}

/// `%.12g`: twelve significant digits, trailing zeros removed.
pub fn format_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    fn trim(s: &str) -> &str {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.')
        } else {
            s
        }
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        let decimals = (11 - exp) as usize;
        trim(&format!("{x:.decimals$}")).to_string()
    }
}

pub const CSV_HEADER: &str = "gt,measure,value,bound,violated";

/// Writes `gt,measure,value,bound,violated` rows in sample order.
pub fn write_csv<W: Write>(mut out: W, run: &RunOutput) -> io::Result<()> {
    let t = &run.trajectory;
    writeln!(out, "{CSV_HEADER}")?;
    for (i, gt) in run.gt.iter().enumerate() {
        for kind in &t.measures {
            let value = t.values[kind][i];
            let bound = t.bounds[kind];
            writeln!(
                out,
                "{},{},{},{},{}",
                format_g12(*gt),
                kind,
                format_g12(value),
                format_g12(bound),
                value > bound + VIOLATION_SLACK
            )?;
        }
    }
    out.flush()
}

/// Human-readable violation report.
pub fn summary(cfg: &ScenarioConfig, run: &RunOutput) -> String {
    let t = &run.trajectory;
    let mut s = String::new();
    let coupling = match cfg.coupling {
        Coupling::JaynesCummings => "jc",
        Coupling::DipoleDipole => "dipole",
    };
    let _ = writeln!(
        s,
        "coupling={coupling} field_dim={} engine={} samples={} gt_max={}",
        run.field_dim,
        run.engine.name(),
        run.gt.len(),
        format_g12(cfg.t_max_gt)
    );
    if let Some(r) = &run.truncation {
        let _ = writeln!(s, "truncation check: dim {} vs {} relative difference {:.3e}", r.dim, 2 * r.dim, r.relative_difference);
    }
    if let Some(n) = run.substeps {
        let _ = writeln!(s, "rk4 substeps per sample: {n}");
    }
    let _ = writeln!(s, "initial correlation I_AC:B(0) = {}", format_g12(t.initial_correlation_term));
    for kind in &t.measures {
        let first = t.first_violation_time(*kind).map_or_else(|| "none".to_string(), format_g12);
        let _ = writeln!(
            s,
            "{:<22} bound={:<14} max={:<14} first_violation_gt={first}",
            kind.name(),
            format_g12(t.bounds[kind]),
            format_g12(t.max(*kind).unwrap_or(f64::NAN)),
        );
    }
    for note in &t.notes {
        let _ = writeln!(s, "note: {note}");
    }
    s
}
