//! Scenario runner behind the `mediated` binary.

pub mod config;
pub mod runner;

use std::fs;
use std::path::{Path, PathBuf};

use mediated_core::correlations::{correlation_capacity, dimension_witness, MeasureKind};
use mediated_core::Execution;
use thiserror::Error;

pub use config::{parse_config, ConfigError, ScenarioConfig};
pub use runner::{run_scenario, summary, write_csv, RunOutput};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] mediated_core::Error),
}

impl CliError {
    /// 2 for numerical failures, 1 for everything the user can fix.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

/// `run <config>`: simulate, write the CSV, return the printed summary.
pub fn run_command(config_path: &Path, exec: Execution) -> Result<String, CliError> {
    let text = fs::read_to_string(config_path).map_err(|source| CliError::Io { path: config_path.into(), source })?;
    let cfg = parse_config(&text)?;
    let run = run_scenario(&cfg, exec)?;
    let path = &cfg.output_path;
    let io_err = |source| CliError::Io { path: path.clone(), source };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err)?;
    }
    let file = fs::File::create(path).map_err(io_err)?;
    write_csv(std::io::BufWriter::new(file), &run).map_err(io_err)?;
    let rows = run.gt.len() * run.trajectory.measures.len();
    Ok(format!("{}wrote {rows} rows to {}\n", summary(&cfg, &run), path.display()))
}

/// `witness <measure> <value>`.
pub fn witness_command(kind: MeasureKind, observed: f64) -> Result<String, CliError> {
    Ok(format!("d_C >= {}", dimension_witness(kind, observed)?))
}

/// `capacities <d_C>`: one `name=value` line per measure.
pub fn capacities_command(d_c: usize) -> Result<String, CliError> {
    let mut out = String::new();
    for kind in MeasureKind::ALL {
        out.push_str(&format!("{}={:?}\n", kind.name(), correlation_capacity(kind, d_c)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_lines() {
        assert_eq!(witness_command(MeasureKind::Negativity, 0.7).unwrap(), "d_C >= 3");
        assert_eq!(witness_command(MeasureKind::MutualInformation, 2.0).unwrap(), "d_C >= 2");
        assert_eq!(witness_command(MeasureKind::Negativity, 1.5).unwrap(), "d_C >= 4");
        assert_eq!(witness_command(MeasureKind::Negativity, -0.2).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn capacity_lines() {
        assert_eq!(
            capacities_command(2).unwrap(),
            "mutual_information=2.0\nclassical_lower_bound=1.0\ndiscord_lower_bound=1.0\nnegativity=0.5\n"
        );
        assert!(capacities_command(1).is_err());
    }

    #[test]
    fn exit_codes() {
        let numerical = CliError::Core(mediated_core::Error::Truncation { dim: 4, relative_difference: 0.1 });
        assert_eq!(numerical.exit_code(), 2);
        let parse = CliError::Config(ConfigError { line: 1, message: "x".into() });
        assert_eq!(parse.exit_code(), 1);
    }
}
