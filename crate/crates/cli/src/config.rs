//! Config-file handling. Precedence: command-line flags override
//! config-file values, which override built-in defaults.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;

/// Optional defaults loadable from a TOML file. Every field mirrors a
/// global or widely shared flag; unset fields fall through to the
/// built-in defaults.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub out_dir: Option<String>,
    /// Parallelism degree: 0 = all cores, 1 = sequential, n = n threads.
    pub jobs: Option<usize>,
    /// Reserved for future stochastic features; recorded, never used by
    /// the numerics.
    pub seed: Option<u64>,
    pub truncation: Option<usize>,
    pub certificate_tol: Option<f64>,
    pub match_tol: Option<f64>,
    pub tol_int: Option<f64>,
    pub gap_threshold: Option<f64>,
    pub levels: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
    }
}

/// `flag.or(file).unwrap_or(default)`.
pub fn resolve<T: Copy>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

pub fn resolve_owned<T: Clone>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}
