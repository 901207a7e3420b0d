//! Eigenvalue computation with truncation-convergence certificates.
//!
//! A truncation certificate compares the spectrum at photon dimension N
//! against the one at ⌈3N/2⌉ and certifies the longest prefix on which
//! the two agree within a tolerance. Certified values are variational
//! upper bounds on the true eigenvalues (Galerkin truncations of
//! operators bounded below can only move eigenvalues down as N grows).
//!
//! The eigenvalue-only path runs through the banded solver in
//! [`crate::banded`]; eigenvectors are computed on demand through a
//! dense decomposition.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::banded::SymmetricBand;
use crate::error::{Error, Result};
use crate::hamiltonian::{build, MatrixData, TruncatedHamiltonian};
use crate::models::{ModelSpec, ParitySector};

/// Full spectrum of one truncation, plus the certificate metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumResult {
    /// All eigenvalues, ascending. Length equals the matrix dimension.
    pub eigenvalues: Vec<f64>,
    /// Photon dimension of the truncation these values came from.
    pub truncation_n: usize,
    /// Largest k such that the lowest k eigenvalues are certified.
    /// Zero when no certificate was computed, or the model is flagged.
    pub converged_count: usize,
    /// Tolerance of the certificate, when one was computed.
    pub certificate_tol: Option<f64>,
    /// Collapse-regime flag propagated from the build.
    pub unreliable: bool,
}

impl SpectrumResult {
    /// The certified prefix (empty without a certificate).
    pub fn certified(&self) -> &[f64] {
        &self.eigenvalues[..self.converged_count]
    }
}

/// Half-bandwidth of a built Hamiltonian in its own ordering. The
/// two-photon couplings reach two photon slots away in a full Fock
/// basis (index distance 5) and one slot away otherwise (distance 3).
fn half_bandwidth(h: &TruncatedHamiltonian) -> usize {
    let slot_step = match (&h.model, h.basis.parity) {
        (ModelSpec::Ncho(_) | ModelSpec::TwoQrm(_), ParitySector::Full) => 2,
        _ => 1,
    };
    (2 * slot_step + 1).min(h.dim().saturating_sub(1))
}

fn solve_eigenvalues(h: &TruncatedHamiltonian) -> Result<Vec<f64>> {
    let bw = half_bandwidth(h);
    match h.data() {
        MatrixData::Real(m) => SymmetricBand::from_dense_lower(m, bw).eigenvalues(),
        MatrixData::Complex(m) => {
            let doubled = SymmetricBand::from_dense_hermitian(m, bw).eigenvalues()?;
            Ok(doubled.into_iter().step_by(2).collect())
        }
    }
}

/// Full spectrum of a built truncation, ascending, without a certificate.
pub fn eigenvalues(h: &TruncatedHamiltonian) -> Result<SpectrumResult> {
    let ev = solve_eigenvalues(h)?;
    Ok(SpectrumResult {
        eigenvalues: ev,
        truncation_n: h.basis.photon_dim,
        converged_count: 0,
        certificate_tol: None,
        unreliable: h.unreliable,
    })
}

/// Eigenvalues and eigenvectors, ascending, through a dense
/// decomposition. Intended for residual checks and small matrices, not
/// for the sweep paths.
pub fn eigenpairs(h: &TruncatedHamiltonian) -> Result<Vec<(f64, DVector<Complex64>)>> {
    let n = h.dim();
    let (values, vectors): (DVector<f64>, DMatrix<Complex64>) = match h.data() {
        MatrixData::Real(m) => {
            let eig = m.clone().symmetric_eigen();
            (
                eig.eigenvalues,
                eig.eigenvectors.map(|x| Complex64::new(x, 0.0)),
            )
        }
        MatrixData::Complex(m) => {
            let eig = m.clone().symmetric_eigen();
            (eig.eigenvalues, eig.eigenvectors)
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    Ok(order
        .into_iter()
        .map(|k| (values[k], vectors.column(k).into_owned()))
        .collect())
}

/// Spectrum with a truncation certificate: solve at photon dimensions N
/// and ⌈3N/2⌉, return the larger truncation's values, and certify the
/// longest prefix on which both agree within `tol`. A collapse-regime
/// model yields `converged_count = 0` unconditionally.
pub fn converged_spectrum(
    spec: &ModelSpec,
    sector: ParitySector,
    photon_dim: usize,
    tol: f64,
) -> Result<SpectrumResult> {
    if photon_dim < 4 {
        return Err(Error::InvalidTruncation(format!(
            "certification needs N >= 4, got {photon_dim}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "certificate tol must be positive, got {tol}"
        )));
    }
    let n2 = (3 * photon_dim).div_ceil(2);
    let h1 = build(spec, photon_dim, sector)?;
    let h2 = build(spec, n2, sector)?;
    let ev1 = solve_eigenvalues(&h1)?;
    let ev2 = solve_eigenvalues(&h2)?;
    let converged_count = if h2.unreliable {
        0
    } else {
        ev1.iter()
            .zip(&ev2)
            .take_while(|(a, b)| (*a - *b).abs() <= tol)
            .count()
    };
    Ok(SpectrumResult {
        eigenvalues: ev2,
        truncation_n: n2,
        converged_count,
        certificate_tol: Some(tol),
        unreliable: h2.unreliable,
    })
}

/// Nearest eigenvalue to `target` and its distance, searching the
/// certified prefix when one exists and the whole list otherwise.
/// Ties resolve to the lower index.
pub fn nearest_eigenvalue(s: &SpectrumResult, target: f64) -> Option<(usize, f64)> {
    let pool: &[f64] = if s.converged_count > 0 {
        s.certified()
    } else {
        &s.eigenvalues
    };
    if pool.is_empty() {
        return None;
    }
    // ascending list: the nearest value brackets the insertion point
    let ip = pool.partition_point(|&x| x < target);
    let mut best: Option<(usize, f64)> = None;
    for idx in [ip.wrapping_sub(1), ip] {
        if idx < pool.len() {
            let r = (pool[idx] - target).abs();
            match best {
                Some((_, rb)) if rb <= r => {}
                _ => best = Some((idx, r)),
            }
        }
    }
    // a degenerate pair straddling idx-1/idx resolves to the lower index
    if let Some((idx, r)) = best {
        let mut lead = idx;
        while lead > 0 && (pool[lead - 1] - target).abs() == r {
            lead -= 1;
        }
        return Some((lead, r));
    }
    best
}

/// Nearest eigenvalue within `tol` of `target`, if any (absence is a
/// value, not an error).
pub fn match_eigenvalue(s: &SpectrumResult, target: f64, tol: f64) -> Option<(usize, f64)> {
    nearest_eigenvalue(s, target).filter(|&(_, r)| r <= tol)
}
