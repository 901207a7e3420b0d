//! Deterministic file emission.
//!
//! Data files (CSV, JSON, dump) contain no timestamps and format every
//! float with Rust's shortest round-trip representation, so identical
//! configs produce byte-identical files. Run metadata (with a timestamp)
//! goes to a separate sidecar.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use rabi_spectra::TruncatedHamiltonian;

use crate::CliError;

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Top-level JSON report: stable field order across versions.
#[derive(Serialize)]
pub struct JsonReport<C: Serialize, R: Serialize, T: Serialize> {
    pub command: &'static str,
    pub config: C,
    pub results: R,
    pub certificates: T,
}

pub fn write_json<D: Serialize>(path: &Path, doc: &D) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc)
        .map_err(|e| CliError::Io(format!("serialization: {e}")))?;
    text.push('\n');
    write_text(path, &text)
}

/// Sidecar with the wall-clock stamp, kept out of the data files.
pub fn write_run_meta(dir: &Path, command: &str, argv: &[String]) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct Meta<'a> {
        command: &'a str,
        argv: &'a [String],
        timestamp_epoch_secs: u64,
    }
    let ts = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    write_json(
        &dir.join("run_meta.json"),
        &Meta {
            command,
            argv,
            timestamp_epoch_secs: ts,
        },
    )
}

pub fn out_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

/// Dense matrix dump: header `dim basis family model-params`, then one
/// row per matrix row with `re imag` pairs, row-major.
pub fn write_matrix_dump(path: &Path, h: &TruncatedHamiltonian) -> Result<(), CliError> {
    let dim = h.dim();
    let mut text = String::new();
    text.push_str(&format!("{dim} {} {}\n", h.basis.label(), h.model));
    for i in 0..dim {
        let mut row = String::new();
        for j in 0..dim {
            let z = h.entry(i, j);
            if j > 0 {
                row.push(' ');
            }
            row.push_str(&format!("{} {}", z.re, z.im));
        }
        row.push('\n');
        text.push_str(&row);
    }
    write_text(path, &text)
}

/// Minimal CSV writer: header + rows, comma-separated, UTF-8.
pub struct Csv {
    buf: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut buf = header.join(",");
        buf.push('\n');
        Csv {
            buf,
            columns: header.len(),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        assert_eq!(fields.len(), self.columns, "column count mismatch");
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    pub fn write(self, path: &Path) -> Result<(), CliError> {
        write_text(path, &self.buf)
    }
}

/// Shortest round-trip float formatting (17 significant digits at most).
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

pub fn write_gnuplot_loglog(
    path: &Path,
    nu_values: &[f64],
    errors: &[Vec<f64>],
) -> Result<(), CliError> {
    // one block per level, blank-line separated; log10 columns ready for
    // `plot "..." index k using 3:4`
    let mut text = String::from("# level nu log10_nu log10_abs_error\n");
    for (k, row) in errors.iter().enumerate() {
        for (j, &err) in row.iter().enumerate() {
            let lnu = nu_values[j].log10();
            let lerr = if err > 0.0 { err.log10() } else { f64::NAN };
            text.push_str(&format!(
                "{k} {} {} {}\n",
                fmt_f64(nu_values[j]),
                fmt_f64(lnu),
                fmt_f64(lerr)
            ));
        }
        text.push('\n');
    }
    let mut f = fs::File::create(path)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
    f.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
