//! Line-oriented `key=value` scenario files.
//!
//! ```text
//! # Jaynes–Cummings from |110⟩
//! coupling=jc
//! initial_state=110
//! t_max_gt=4
//! measures=mutual_information,negativity
//! lindblad=A:lowering:0.05,C:dephasing:0.01
//! ```

use std::fmt;
use std::path::PathBuf;

use mediated_core::correlations::MeasureKind;
use mediated_core::hilbert::Subsystem;
use num_complex::Complex64 as C64;

/// Mediator dimension of every coupling the runner can build.
pub const MEDIATOR_DIM: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coupling {
    JaynesCummings,
    DipoleDipole,
}

#[derive(Clone, Debug, PartialEq)]
pub enum InitialState {
    /// `|a b c⟩` in the Fock ⊗ Fock ⊗ qubit basis.
    Occupation([usize; 3]),
    /// Normalized superposition of occupation basis states.
    Amplitudes(Vec<([usize; 3], C64)>),
}

impl InitialState {
    pub fn terms(&self) -> Vec<([usize; 3], C64)> {
        match self {
            InitialState::Occupation(occ) => vec![(*occ, C64::new(1.0, 0.0))],
            InitialState::Amplitudes(terms) => terms.clone(),
        }
    }

    /// Largest total excitation `a + b + c` among the terms.
    pub fn max_excitation(&self) -> usize {
        self.terms().iter().map(|(o, _)| o.iter().sum()).max().unwrap_or(0)
    }

    /// Largest field occupation among the terms.
    pub fn max_field_occupation(&self) -> usize {
        self.terms().iter().map(|(o, _)| o[0].max(o[1])).max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldDim {
    Auto,
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JumpKind {
    Lowering,
    Dephasing,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LindbladTerm {
    pub subsystem: Subsystem,
    pub kind: JumpKind,
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub coupling: Coupling,
    pub g: f64,
    pub initial_state: InitialState,
    pub t_max_gt: f64,
    pub n_points: usize,
    pub field_dim: FieldDim,
    pub measures: Vec<MeasureKind>,
    pub lindblad: Vec<LindbladTerm>,
    pub output_path: PathBuf,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            coupling: Coupling::JaynesCummings,
            g: 1.0,
            initial_state: InitialState::Occupation([1, 1, 0]),
            t_max_gt: 4.0,
            n_points: 401,
            field_dim: FieldDim::Auto,
            measures: MeasureKind::ALL.to_vec(),
            lindblad: Vec::new(),
            output_path: PathBuf::from("trajectory.csv"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    /// 1-based line number; 0 when the problem is not tied to one line.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "config: {}", self.message)
        } else {
            write!(f, "config line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

const KEYS: [&str; 9] = [
    "coupling",
    "g",
    "initial_state",
    "t_max_gt",
    "n_points",
    "field_dim",
    "measures",
    "lindblad",
    "output_path",
];

fn parse_coupling(v: &str) -> Result<Coupling, String> {
    match v {
        "jc" => Ok(Coupling::JaynesCummings),
        "dipole" => Ok(Coupling::DipoleDipole),
        "custom" => Err("coupling=custom needs explicit operator matrices; build it with \
                         mediated_core::dynamics::custom_bipartite_sum instead"
            .into()),
        other => Err(format!("unknown coupling {other:?} (expected jc or dipole)")),
    }
}

fn parse_positive_real(v: &str, what: &str) -> Result<f64, String> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        Ok(x) => Err(format!("{what} must be finite and positive, got {x}")),
        Err(_) => Err(format!("{what} is not a number: {v:?}")),
    }
}

fn parse_occupation(s: &str) -> Result<[usize; 3], String> {
    let digits: Vec<usize> = s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()
        .ok_or_else(|| format!("occupation {s:?} must consist of digits"))?;
    if digits.len() != 3 {
        return Err(format!("occupation {s:?} must have exactly three digits (A, B, C)"));
    }
    if digits[2] >= MEDIATOR_DIM {
        return Err(format!(
            "mediator occupation {} in {s:?} is not below d_C = {MEDIATOR_DIM}",
            digits[2]
        ));
    }
    Ok([digits[0], digits[1], digits[2]])
}

fn parse_initial_state(v: &str) -> Result<InitialState, String> {
    if !v.contains(':') {
        return parse_occupation(v).map(InitialState::Occupation);
    }
    let mut terms: Vec<([usize; 3], C64)> = Vec::new();
    for item in v.split(',') {
        let parts: Vec<&str> = item.trim().split(':').collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(format!("amplitude term {item:?} must be occ:re or occ:re:im"));
        }
        let occ = parse_occupation(parts[0].trim())?;
        let num = |p: &str| p.trim().parse::<f64>().ok().filter(|x| x.is_finite());
        let re = num(parts[1]).ok_or_else(|| format!("bad real part in {item:?}"))?;
        let im = match parts.get(2) {
            Some(p) => num(p).ok_or_else(|| format!("bad imaginary part in {item:?}"))?,
            None => 0.0,
        };
        if terms.iter().any(|(o, _)| *o == occ) {
            return Err(format!("occupation {} listed twice", parts[0].trim()));
        }
        terms.push((occ, C64::new(re, im)));
    }
    let norm = terms.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err("amplitude list has zero norm".into());
    }
    Ok(InitialState::Amplitudes(terms.into_iter().map(|(o, a)| (o, a / norm)).collect()))
}

fn parse_field_dim(v: &str) -> Result<FieldDim, String> {
    if v == "auto" {
        return Ok(FieldDim::Auto);
    }
    match v.parse::<usize>() {
        Ok(d) if d >= 2 => Ok(FieldDim::Fixed(d)),
        _ => Err(format!("field_dim must be \"auto\" or an integer >= 2, got {v:?}")),
    }
}

fn parse_measures(v: &str) -> Result<Vec<MeasureKind>, String> {
    let mut out = Vec::new();
    for item in v.split(',') {
        let kind: MeasureKind = item.parse().map_err(|e: mediated_core::Error| e.to_string())?;
        if !out.contains(&kind) {
            out.push(kind);
        }
    }
    Ok(out)
}

fn parse_lindblad(v: &str) -> Result<Vec<LindbladTerm>, String> {
    if v.is_empty() || v == "none" {
        return Ok(Vec::new());
    }
    v.split(',')
        .map(|item| {
            let parts: Vec<&str> = item.trim().split(':').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(format!("lindblad term {item:?} must be subsystem:kind:rate"));
            }
            let subsystem: Subsystem = parts[0].parse().map_err(|e: mediated_core::Error| e.to_string())?;
            let kind = match parts[1] {
                "lowering" => JumpKind::Lowering,
                "dephasing" => JumpKind::Dephasing,
                other => return Err(format!("unknown jump kind {other:?} (expected lowering or dephasing)")),
            };
            let rate = match parts[2].parse::<f64>() {
                Ok(r) if r.is_finite() && r >= 0.0 => r,
                _ => return Err(format!("rate in {item:?} must be a finite nonnegative number")),
            };
            Ok(LindbladTerm { subsystem, kind, rate })
        })
        .collect()
}

/// Parses and validates a scenario file, filling in defaults.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut cfg = ScenarioConfig::default();
    let mut seen: Vec<(&str, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| ConfigError { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got {content:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        let key = *KEYS.iter().find(|k| **k == key).ok_or_else(|| err(format!("unknown key {key:?}")))?;
        if let Some((_, first)) = seen.iter().find(|(k, _)| *k == key) {
            return Err(err(format!("key {key:?} already set on line {first}")));
        }
        seen.push((key, line));
        match key {
            "coupling" => cfg.coupling = parse_coupling(value).map_err(err)?,
            "g" => cfg.g = parse_positive_real(value, "g").map_err(err)?,
            "initial_state" => cfg.initial_state = parse_initial_state(value).map_err(err)?,
            "t_max_gt" => cfg.t_max_gt = parse_positive_real(value, "t_max_gt").map_err(err)?,
            "n_points" => {
                cfg.n_points = match value.parse::<usize>() {
                    Ok(n) if n >= 2 => n,
                    _ => return Err(err(format!("n_points must be an integer >= 2, got {value:?}"))),
                }
            }
            "field_dim" => cfg.field_dim = parse_field_dim(value).map_err(err)?,
            "measures" => cfg.measures = parse_measures(value).map_err(err)?,
            "lindblad" => cfg.lindblad = parse_lindblad(value).map_err(err)?,
            "output_path" => {
                if value.is_empty() {
                    return Err(err("output_path is empty".into()));
                }
                cfg.output_path = PathBuf::from(value);
            }
            _ => unreachable!("key list and match arms cover the same names"),
        }
    }
    if let FieldDim::Fixed(d) = cfg.field_dim {
        let needed = cfg.initial_state.max_field_occupation() + 1;
        if d < needed {
            let line = seen.iter().find(|(k, _)| *k == "field_dim").map_or(0, |(_, l)| *l);
            return Err(ConfigError {
                line,
                message: format!("field_dim {d} cannot hold the initial occupation (needs at least {needed})"),
            });
        }
    }
    Ok(cfg)
}
