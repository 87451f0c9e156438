use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use pwave_core::gap::{Branch, GapModel};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyAlgebra,
    VerifyMeanfield,
    SolveGap,
    SweepTemperature,
    FieldSweep,
    DipoleCheck,
    YangianCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyAlgebra => "verify-algebra",
            Command::VerifyMeanfield => "verify-meanfield",
            Command::SolveGap => "solve-gap",
            Command::SweepTemperature => "sweep-temperature",
            Command::FieldSweep => "field-sweep",
            Command::DipoleCheck => "dipole-check",
            Command::YangianCheck => "yangian-check",
        }
    }

    fn default_format(self) -> Format {
        match self {
            Command::SolveGap | Command::SweepTemperature | Command::FieldSweep => Format::Csv,
            _ => Format::Json,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        <Command as ValueEnum>::from_str(s, true).map_err(|_| CliError::Config(format!("unknown command `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Command-line flags. Every flag is optional so that a config file can
/// supply it instead; the positional command and `--command` are aliases.
#[derive(Debug, Clone, Default, Parser)]
#[command(name = "pwave", version, about = "p-wave pairing algebra checks and gap solver")]
pub struct Flags {
    #[arg(value_enum)]
    pub subcommand: Option<Command>,
    #[arg(long, value_enum)]
    pub command: Option<Command>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long = "omega-c")]
    pub omega_c: Option<f64>,
    #[arg(long = "T", allow_negative_numbers = true)]
    pub temperature: Option<f64>,
    /// Upper end of a temperature sweep; defaults to 1.2 Tc.
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub branch: Option<String>,
    #[arg(long = "muB", allow_negative_numbers = true)]
    pub mu_b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub h: Option<f64>,
    /// Number of samples, points or temperatures.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long = "n-energy")]
    pub n_energy: Option<usize>,
    #[arg(long = "n-theta")]
    pub n_theta: Option<usize>,
    #[arg(long = "n-psi")]
    pub n_psi: Option<usize>,
}

/// Flat JSON config file. Keys match the long flag names.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub command: Option<Command>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub g: Option<f64>,
    #[serde(rename = "omega-c", alias = "omega_c")]
    pub omega_c: Option<f64>,
    #[serde(rename = "T")]
    pub temperature: Option<f64>,
    #[serde(rename = "t-max", alias = "t_max")]
    pub t_max: Option<f64>,
    pub branch: Option<String>,
    #[serde(rename = "muB")]
    pub mu_b: Option<f64>,
    pub mu1: Option<f64>,
    pub mu2: Option<f64>,
    pub h: Option<f64>,
    pub n: Option<usize>,
    #[serde(rename = "n-energy", alias = "n_energy")]
    pub n_energy: Option<usize>,
    #[serde(rename = "n-theta", alias = "n_theta")]
    pub n_theta: Option<usize>,
    #[serde(rename = "n-psi", alias = "n_psi")]
    pub n_psi: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }
}

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_N: usize = 20;

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    pub format: Format,
    pub model: GapModel,
    pub t_max: Option<f64>,
    pub mu1: f64,
    pub mu2: f64,
    pub h: f64,
    pub n: usize,
}

impl RunConfig {
    /// Flag values win over file values, which win over defaults.
    pub fn resolve(flags: Flags, file: FileConfig) -> Result<Self, CliError> {
        if let (Some(a), Some(b)) = (flags.subcommand, flags.command) {
            if a != b {
                return Err(CliError::Config(format!("command given twice: `{a}` and `{b}`")));
            }
        }
        let command = flags
            .subcommand
            .or(flags.command)
            .or(file.command)
            .ok_or_else(|| CliError::Config("no command given".into()))?;
        let defaults = GapModel::default();
        let branch = match flags.branch.or(file.branch) {
            Some(s) => s.parse::<Branch>()?,
            None => defaults.branch,
        };
        let model = GapModel {
            coupling: flags.g.or(file.g).unwrap_or(defaults.coupling),
            omega_c: flags.omega_c.or(file.omega_c).unwrap_or(defaults.omega_c),
            temperature: flags.temperature.or(file.temperature).unwrap_or(defaults.temperature),
            branch,
            mu_b: flags.mu_b.or(file.mu_b).unwrap_or(defaults.mu_b),
            n_energy: flags.n_energy.or(file.n_energy).unwrap_or(defaults.n_energy),
            n_theta: flags.n_theta.or(file.n_theta).unwrap_or(defaults.n_theta),
            n_psi: flags.n_psi.or(file.n_psi).unwrap_or(defaults.n_psi),
            ..defaults
        };
        let cfg = Self {
            command,
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            output: flags.output.or(file.output),
            format: flags.format.or(file.format).unwrap_or(command.default_format()),
            model,
            t_max: flags.t_max.or(file.t_max),
            mu1: flags.mu1.or(file.mu1).unwrap_or(0.0),
            mu2: flags.mu2.or(file.mu2).unwrap_or(1.0),
            h: flags.h.or(file.h).unwrap_or(0.0),
            n: flags.n.or(file.n).unwrap_or(DEFAULT_N),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_flags(flags: Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        Self::resolve(flags, file)
    }

    fn validate(&self) -> Result<(), CliError> {
        self.model.validate()?;
        self.model.discretize()?;
        if self.n == 0 {
            return Err(CliError::Config("n must be positive".into()));
        }
        if let Some(t) = self.t_max {
            if !(t.is_finite() && t >= self.model.temperature) {
                return Err(CliError::Config(format!(
                    "t-max {t} below T = {}",
                    self.model.temperature
                )));
            }
        }
        for (name, v) in [("mu1", self.mu1), ("mu2", self.mu2), ("h", self.h)] {
            if !v.is_finite() {
                return Err(CliError::Config(format!("{name} is not finite")));
            }
        }
        if self.command == Command::YangianCheck && self.n < pwave_core::yangian::MIN_SAMPLES {
            return Err(CliError::Config(format!(
                "yangian-check needs n >= {}",
                pwave_core::yangian::MIN_SAMPLES
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(args: &[&str]) -> Flags {
        Flags::try_parse_from(std::iter::once("pwave").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_override_file() {
        let file = FileConfig::parse(r#"{"command": "solve-gap", "g": 0.3, "T": 0.01, "seed": 7}"#).unwrap();
        let cfg = RunConfig::resolve(flags(&["--g", "0.2"]), file).unwrap();
        assert_eq!(cfg.command, Command::SolveGap);
        assert_eq!(cfg.model.coupling, 0.2);
        assert_eq!(cfg.model.temperature, 0.01);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.format, Format::Csv);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(matches!(FileConfig::parse(r#"{"gg": 1}"#), Err(CliError::Config(_))));
    }

    #[test]
    fn physical_parameters_validated() {
        assert!(RunConfig::resolve(flags(&["solve-gap", "--g", "1.5"]), FileConfig::default()).is_err());
        assert!(RunConfig::resolve(flags(&["solve-gap", "--T", "-1"]), FileConfig::default()).is_err());
        assert!(RunConfig::resolve(flags(&["solve-gap", "--branch", "abm"]), FileConfig::default()).is_err());
        assert!(RunConfig::resolve(flags(&["yangian-check", "--n", "3"]), FileConfig::default()).is_err());
    }

    #[test]
    fn command_required_and_consistent() {
        assert!(RunConfig::resolve(flags(&[]), FileConfig::default()).is_err());
        assert!(RunConfig::resolve(
            flags(&["solve-gap", "--command", "dipole-check"]),
            FileConfig::default()
        )
        .is_err());
        let cfg = RunConfig::resolve(flags(&["--command", "dipole-check"]), FileConfig::default()).unwrap();
        assert_eq!(cfg.format, Format::Json);
    }

    #[test]
    fn branch_spellings() {
        let cfg = RunConfig::resolve(flags(&["solve-gap", "--branch", "non-esp"]), FileConfig::default()).unwrap();
        assert_eq!(cfg.model.branch, Branch::NonEsp);
    }
}
