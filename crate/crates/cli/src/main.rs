//! Command-line surface for the rabi-spectra library.
//!
//! Subcommands: `spectrum`, `verify`, `confluence`, `degeneracy`,
//! `dump-matrix`. Data files are deterministic (no timestamps, shortest
//! round-trip floats); run metadata lands in a `run_meta.json` sidecar.
//!
//! Exit codes: 0 success / all checks pass, 1 checks ran but failed,
//! 2 configuration error, 3 numerical or I/O failure.

mod commands;
mod config;
mod output;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use rabi_spectra::{
    DiskParams, Error as CoreError, ModelSpec, NchoParams, OneQrmParams, ParitySector, TwoQrmParams,
};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o failure: {m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Numerical(m) => CliError::Numerical(m),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "rabi-spectra",
    version,
    about = "Spectra and spectral correspondences of the quantum Rabi model family"
)]
pub struct Cli {
    /// Directory for output files
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    /// TOML file with default settings (flags override it)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Parallelism degree: 0 = all cores, 1 = sequential, n = n threads
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Reserved; recorded in run metadata, unused by the numerics
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of one model truncation (CSV + JSON)
    Spectrum(SpectrumArgs),
    /// Run a correspondence check family
    Verify(VerifyArgs),
    /// Rescaled-disk convergence study against a one-photon target
    Confluence(ConfluenceArgs),
    /// Sweep a parameter, refine gap minima, test degeneracy conditions
    Degeneracy(DegeneracyArgs),
    /// Write a built matrix as a text dump
    DumpMatrix(DumpArgs),
}

/// Model selector shared by several subcommands.
#[derive(Args, Clone, Debug)]
pub struct ModelArgs {
    /// Model family: ncho | 2qrm | 1qrm | disk
    #[arg(long)]
    model: String,

    /// NCHO α (> 0)
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// NCHO β (> 0)
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// NCHO shift η (needs αβ > 1 when nonzero)
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,

    /// Two-photon / disk coupling g
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
    /// σ₃ coefficient Δ
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// σ₁ coefficient ε
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Bergman weight ν (> 0, disk model)
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,

    /// One-photon coupling g′
    #[arg(long, allow_negative_numbers = true)]
    gp: Option<f64>,
    /// One-photon Δ′
    #[arg(long, allow_negative_numbers = true)]
    dp: Option<f64>,
    /// One-photon ε′
    #[arg(long, allow_negative_numbers = true)]
    ep: Option<f64>,
}

impl ModelArgs {
    pub fn to_spec(&self) -> Result<ModelSpec, CliError> {
        let need = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| {
                CliError::Config(format!("--{name} is required for --model {}", self.model))
            })
        };
        match self.model.as_str() {
            "ncho" => Ok(ModelSpec::Ncho(NchoParams::new(
                need("alpha", self.alpha)?,
                need("beta", self.beta)?,
                self.eta.unwrap_or(0.0),
            )?)),
            "2qrm" => Ok(ModelSpec::TwoQrm(TwoQrmParams::new(
                self.g.unwrap_or(0.0),
                self.delta.unwrap_or(0.0),
                self.epsilon.unwrap_or(0.0),
            )?)),
            "disk" => Ok(ModelSpec::Disk(DiskParams::new(
                need("nu", self.nu)?,
                self.g.unwrap_or(0.0),
                self.delta.unwrap_or(0.0),
                self.epsilon.unwrap_or(0.0),
            )?)),
            "1qrm" => Ok(ModelSpec::OneQrm(OneQrmParams::new(
                self.gp.unwrap_or(0.0),
                self.dp.unwrap_or(0.0),
                self.ep.unwrap_or(0.0),
            )?)),
            other => Err(CliError::Config(format!(
                "unknown model '{other}' (expected ncho | 2qrm | 1qrm | disk)"
            ))),
        }
    }
}

pub fn parse_sector(s: &str) -> Result<ParitySector, CliError> {
    match s {
        "even" => Ok(ParitySector::Even),
        "odd" => Ok(ParitySector::Odd),
        "full" => Ok(ParitySector::Full),
        other => Err(CliError::Config(format!(
            "unknown sector '{other}' (expected even | odd | full)"
        ))),
    }
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Retained basis functions per spin component
    #[arg(long = "N")]
    truncation: Option<usize>,
    /// Parity sector: even | odd | full
    #[arg(long, default_value = "full")]
    sector: String,
    /// Certify the spectrum by truncation comparison at ⌈3N/2⌉
    #[arg(long)]
    certify: bool,
    /// Certificate tolerance
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Check family: ncho-to-2qrm | 2qrm-to-ncho | parity-disk | basis-dictionary
    #[arg(long)]
    check: String,
    /// NCHO α (forward check)
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// NCHO β (forward check)
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// NCHO η
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,
    /// Two-photon g (reverse and matrix checks)
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
    /// Two-photon Δ
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Two-photon ε
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Sector: even | odd | both
    #[arg(long, default_value = "both")]
    sector: String,
    /// Levels to verify per sector
    #[arg(long)]
    levels: Option<usize>,
    /// Truncation N (basis functions per spin component)
    #[arg(long = "N")]
    truncation: Option<usize>,
    /// Certificate tolerance
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
    /// Eigenvalue matching tolerance
    #[arg(long, allow_negative_numbers = true)]
    match_tol: Option<f64>,
    /// Max-entry deviation bound for the matrix identity checks
    #[arg(long, default_value_t = 1e-13, allow_negative_numbers = true)]
    dev_tol: f64,
}

#[derive(Args, Debug)]
pub struct ConfluenceArgs {
    /// Target one-photon coupling g′
    #[arg(long, allow_negative_numbers = true)]
    gp: f64,
    /// Target Δ′
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    dp: f64,
    /// Target ε′
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    ep: f64,
    /// Comma-separated ascending ν values, e.g. 50,100,200,400
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    nu: Vec<f64>,
    /// Levels to track
    #[arg(long)]
    levels: Option<usize>,
    /// Disk truncation
    #[arg(long = "N")]
    truncation: Option<usize>,
    /// One-photon reference truncation
    #[arg(long)]
    ref_n: Option<usize>,
    /// Certificate tolerance
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
    /// Accepted fitted-order band as lo,hi
    #[arg(long, value_delimiter = ',', default_values_t = [0.7, 1.3], allow_negative_numbers = true)]
    order_band: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct DegeneracyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Parameter to sweep: g | delta | epsilon | alpha | beta | eta
    #[arg(long)]
    sweep: String,
    /// Sweep start
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    /// Sweep end
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    /// Grid points (endpoints included)
    #[arg(long, default_value_t = 400)]
    grid: usize,
    /// Sector: even | odd | full
    #[arg(long, default_value = "full")]
    sector: String,
    /// Number of adjacent-level gaps tracked
    #[arg(long)]
    levels: Option<usize>,
    /// Truncation
    #[arg(long = "N")]
    truncation: Option<usize>,
    /// Refined gap at or below this is a crossing
    #[arg(long, allow_negative_numbers = true)]
    gap_threshold: Option<f64>,
    /// Integer-condition tolerance
    #[arg(long, allow_negative_numbers = true)]
    tol_int: Option<f64>,
    /// Grid-level local minima below this get refined
    #[arg(long, default_value_t = 1e-2, allow_negative_numbers = true)]
    candidate_gap: f64,
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Retained basis functions per spin component
    #[arg(long = "N")]
    truncation: usize,
    /// Parity sector: even | odd | full
    #[arg(long, default_value = "full")]
    sector: String,
    /// Output file (default: `<out-dir>/matrix.txt`)
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().collect();
    match commands::run(cli, argv) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("rabi-spectra: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_contract() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
        assert_eq!(CliError::Numerical("x".into()).exit_code(), 3);
        assert_eq!(CliError::Io("x".into()).exit_code(), 3);
        // core errors split into config vs numerical
        let e: CliError = CoreError::InvalidParams("x".into()).into();
        assert_eq!(e.exit_code(), 2);
        let e: CliError = CoreError::Regime("x".into()).into();
        assert_eq!(e.exit_code(), 2);
        let e: CliError = CoreError::Numerical("x".into()).into();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
