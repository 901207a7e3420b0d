//! The large-weight rescaling of the disk model onto the one-photon
//! Rabi model, with measured convergence.
//!
//! For a target (g′, Δ′, ε′), the disk model at weight ν with
//! g = g′/√ν, Δ = 2Δ′, ε = 2ε′ has eigenvalues μ whose shifted halves
//! μ′ = (μ − ν)/2 approach the one-photon spectrum as ν → ∞, with
//! first-order corrections in 1/ν. [`confluence_study`] tabulates the
//! deviations over a ν grid and fits the per-level convergence order;
//! [`confluent_equation_residual`] measures the same statement at the
//! matrix level, where the rescaled operator differs from the one-photon
//! matrix only through the coupling coefficients
//! g′√((m+1)(m+ν)/ν) vs g′√(m+1).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{build_1qrm, build_disk};
use crate::models::{inverse_scaling, mu_prime, ModelSpec, OneQrmParams, ParitySector};
use crate::parallel::{par_map, Parallelism};
use crate::spectrum::converged_spectrum;

/// Knobs for the confluence runs.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConfluenceOptions {
    /// How many of the lowest levels to track.
    pub n_levels: usize,
    /// Disk truncation. The low end of the disk spectrum already maps to
    /// the low end of the one-photon spectrum, so a modest truncation
    /// suffices; the certificate, not this default, is the authority.
    pub truncation: usize,
    pub certificate_tol: f64,
    /// Truncation of the one-photon reference spectrum.
    pub reference_truncation: usize,
    /// Levels whose error at the smallest ν is already below this are
    /// saturated: exact up to solver noise, excluded from order fitting.
    pub saturation_threshold: f64,
    pub parallelism: Parallelism,
}

impl Default for ConfluenceOptions {
    fn default() -> Self {
        ConfluenceOptions {
            n_levels: 5,
            truncation: 80,
            certificate_tol: 1e-9,
            reference_truncation: 800,
            saturation_threshold: 1e-11,
            parallelism: Parallelism::default(),
        }
    }
}

/// Convergence table of the rescaled disk spectra against the one-photon
/// reference.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfluenceTable {
    pub target: OneQrmParams,
    pub nu_values: Vec<f64>,
    pub levels: usize,
    /// `mu_prime[k][j]`: rescaled level k at `nu_values[j]`.
    pub mu_prime: Vec<Vec<f64>>,
    /// Lowest `levels` certified one-photon eigenvalues.
    pub reference: Vec<f64>,
    /// `errors[k][j] = |mu_prime[k][j] − reference[k]|`.
    pub errors: Vec<Vec<f64>>,
    /// Per-level empirical order p of error ∝ ν^(−p); None when saturated
    /// (or fewer than two usable points).
    pub fitted_order: Vec<Option<f64>>,
    pub saturated: Vec<bool>,
}

fn check_regime(o: &OneQrmParams, nu: f64) -> Result<()> {
    o.validate()?;
    if nu.is_nan() || nu < 1.0 {
        return Err(Error::Regime(format!("rescaling needs nu >= 1, got {nu}")));
    }
    if o.g_p.abs() / nu.sqrt() >= 0.5 {
        return Err(Error::Regime(format!(
            "g'/sqrt(nu) = {} reaches the collapse coupling 1/2 (need nu > 4g'^2)",
            o.g_p.abs() / nu.sqrt()
        )));
    }
    Ok(())
}

/// Certified lowest `n_levels` rescaled eigenvalues μ′_k = (μ_k − ν)/2 of
/// the disk model at weight ν tuned to the one-photon target.
pub fn rescaled_disk_spectrum(
    o: &OneQrmParams,
    nu: f64,
    opts: &ConfluenceOptions,
) -> Result<Vec<f64>> {
    check_regime(o, nu)?;
    let d = inverse_scaling(o, nu)?;
    let s = converged_spectrum(
        &ModelSpec::Disk(d),
        ParitySector::Full,
        opts.truncation,
        opts.certificate_tol,
    )?;
    if s.converged_count < opts.n_levels {
        return Err(Error::Numerical(format!(
            "only {} of {} requested levels certified at nu={nu}; increase the truncation",
            s.converged_count, opts.n_levels
        )));
    }
    Ok(s.certified()[..opts.n_levels]
        .iter()
        .map(|&mu| mu_prime(mu, nu))
        .collect())
}

/// Least-squares slope of y against x.
fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        num += (xi - mx) * (yi - my);
        den += (xi - mx) * (xi - mx);
    }
    num / den
}

/// Tabulate rescaled spectra over a ν grid, compare them to the certified
/// one-photon reference, and fit the per-level convergence order by
/// least squares on log(error) vs log(ν).
pub fn confluence_study(
    o: &OneQrmParams,
    nu_values: &[f64],
    opts: &ConfluenceOptions,
) -> Result<ConfluenceTable> {
    if nu_values.len() < 2 {
        return Err(Error::InvalidParams("need at least two nu values".into()));
    }
    if nu_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams(
            "nu values must be strictly ascending".into(),
        ));
    }
    for &nu in nu_values {
        check_regime(o, nu)?;
    }

    let per_nu: Vec<Result<Vec<f64>>> = par_map(opts.parallelism, nu_values.to_vec(), |nu| {
        rescaled_disk_spectrum(o, nu, opts)
    });
    let per_nu: Vec<Vec<f64>> = per_nu.into_iter().collect::<Result<_>>()?;

    let reference_full = converged_spectrum(
        &ModelSpec::OneQrm(*o),
        ParitySector::Full,
        opts.reference_truncation,
        opts.certificate_tol,
    )?;
    if reference_full.converged_count < opts.n_levels {
        return Err(Error::Numerical(format!(
            "one-photon reference certified only {} of {} levels",
            reference_full.converged_count, opts.n_levels
        )));
    }
    let reference: Vec<f64> = reference_full.certified()[..opts.n_levels].to_vec();

    let levels = opts.n_levels;
    let mut mu_prime_rows = vec![vec![0.0; nu_values.len()]; levels];
    let mut errors = vec![vec![0.0; nu_values.len()]; levels];
    for (j, col) in per_nu.iter().enumerate() {
        for k in 0..levels {
            mu_prime_rows[k][j] = col[k];
            errors[k][j] = (col[k] - reference[k]).abs();
        }
    }

    let mut fitted_order = Vec::with_capacity(levels);
    let mut saturated = Vec::with_capacity(levels);
    for row in &errors {
        let sat = row[0] < opts.saturation_threshold;
        saturated.push(sat);
        if sat {
            fitted_order.push(None);
            continue;
        }
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for (&nu, &err) in nu_values.iter().zip(row) {
            if err > 0.0 {
                xs.push(nu.ln());
                ys.push(err.ln());
            }
        }
        fitted_order.push(if xs.len() >= 2 {
            Some(-slope(&xs, &ys))
        } else {
            None
        });
    }

    Ok(ConfluenceTable {
        target: *o,
        nu_values: nu_values.to_vec(),
        levels,
        mu_prime: mu_prime_rows,
        reference,
        errors,
        fitted_order,
        saturated,
    })
}

/// Matrix-level deviation between the rescaled disk operator and the
/// one-photon matrix on the leading block of `sample_count` basis
/// functions. In the orthonormal basis of the rescaled space the
/// operator is exactly (D_ν − ν)/2, so the deviation lives entirely in
/// the coupling coefficients and shrinks like O(1/ν) on a fixed block.
pub fn confluent_equation_residual(o: &OneQrmParams, nu: f64, sample_count: usize) -> Result<f64> {
    check_regime(o, nu)?;
    let d = inverse_scaling(o, nu)?;
    let disk = build_disk(&d, sample_count)?;
    let one = build_1qrm(o, sample_count)?;
    let dm = disk.real_matrix().expect("disk builds are real");
    let qm = one.real_matrix().expect("one-photon builds are real");
    let mut worst = 0.0f64;
    for j in 0..dm.ncols() {
        for i in 0..dm.nrows() {
            let rescaled = 0.5 * (dm[(i, j)] - if i == j { nu } else { 0.0 });
            worst = worst.max((rescaled - qm[(i, j)]).abs());
        }
    }
    Ok(worst)
}
