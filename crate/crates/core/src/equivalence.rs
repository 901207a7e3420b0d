//! Numerical verification of the oscillator ↔ two-photon correspondence
//! and of the exact operator dictionary between the parity-restricted
//! Fock picture and the Bergman-monomial picture.
//!
//! The forward check takes certified oscillator eigenvalues λ_k, maps
//! each through the parameter map — Δ depends on λ_k, so every level
//! selects its own two-photon operator — and asks whether the mapped
//! μ_k lands in that operator's certified spectrum. The reverse check
//! does the same from certified two-photon eigenvalues, classifying the
//! levels with |μ| ≤ |Δ| as obstructed (no oscillator preimage exists)
//! rather than failed.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hamiltonian::{build_2qrm, build_disk, max_entry_deviation};
use crate::models::{
    ncho_to_2qrm, two_qrm_to_ncho, DiskParams, MappingRecord, ModelSpec, NchoParams, ParitySector,
    TwoQrmParams,
};
use crate::parallel::{par_map, Parallelism};
use crate::spectrum::{converged_spectrum, nearest_eigenvalue, SpectrumResult};
use crate::Error;

/// Which way the correspondence was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    NchoTo2Qrm,
    TwoQrmToNcho,
}

/// A certified two-photon level with |μ| ≤ |Δ|: the inverse map has no
/// positive (α, β) there, so no oscillator counterpart is predicted.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ObstructedLevel {
    pub level: usize,
    pub mu: f64,
}

/// Outcome of one directional verification run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub direction: Direction,
    pub sector: ParitySector,
    /// Base truncation of the certificates (solves ran at N and ⌈3N/2⌉).
    pub truncation_n: usize,
    /// Matching tolerance the verdict uses.
    pub tol: f64,
    /// Mapped levels in ascending level order. Uncertified levels are
    /// not listed (and do not influence the verdict).
    pub records: Vec<MappingRecord>,
    /// Levels excluded by the |μ| > |Δ| obstruction (reverse direction).
    pub obstructed: Vec<ObstructedLevel>,
    /// True iff every record's residual is within `tol`.
    pub all_matched: bool,
    /// Collapse-regime flag of the source model; a true value means the
    /// run certified nothing and asserts nothing.
    pub unreliable: bool,
}

/// Knobs for the directional verifications.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// How many certified levels to verify (fewer if the certificate is
    /// shorter).
    pub n_levels: usize,
    /// Base truncation N of every certificate.
    pub truncation: usize,
    /// Certificate tolerance (truncation agreement).
    pub certificate_tol: f64,
    /// Matching tolerance; one order looser than the certificate by
    /// default since two independent truncations contribute.
    pub match_tol: f64,
    pub parallelism: Parallelism,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_levels: 8,
            truncation: 400,
            certificate_tol: 1e-9,
            match_tol: 1e-7,
            parallelism: Parallelism::default(),
        }
    }
}

/// Solve cache key: model family + parameter bits + truncation + sector.
/// Levels of one run frequently share a target operator (α = β makes
/// every Δ_k equal), and the cache collapses those duplicate solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct SolveKey {
    family: u8,
    bits: [u64; 4],
    n: usize,
    sector: ParitySector,
}

impl SolveKey {
    fn for_model(spec: &ModelSpec, n: usize, sector: ParitySector) -> Self {
        let (family, bits) = match spec {
            ModelSpec::Ncho(p) => (0, [p.alpha.to_bits(), p.beta.to_bits(), p.eta.to_bits(), 0]),
            ModelSpec::TwoQrm(q) => (
                1,
                [q.g.to_bits(), q.delta.to_bits(), q.epsilon.to_bits(), 0],
            ),
            ModelSpec::Disk(d) => (
                2,
                [
                    d.g.to_bits(),
                    d.delta.to_bits(),
                    d.epsilon.to_bits(),
                    d.nu.to_bits(),
                ],
            ),
            ModelSpec::OneQrm(o) => (
                3,
                [
                    o.g_p.to_bits(),
                    o.delta_p.to_bits(),
                    o.epsilon_p.to_bits(),
                    0,
                ],
            ),
        };
        SolveKey {
            family,
            bits,
            n,
            sector,
        }
    }
}

/// Certified solves for a batch of models, deduplicated, in parallel.
fn solve_batch(
    targets: &[ModelSpec],
    sector: ParitySector,
    n: usize,
    tol: f64,
    par: Parallelism,
) -> Result<HashMap<SolveKey, Arc<SpectrumResult>>> {
    let mut unique: Vec<(SolveKey, ModelSpec)> = Vec::new();
    let mut seen = HashMap::new();
    for spec in targets {
        let key = SolveKey::for_model(spec, n, sector);
        if seen.insert(key, ()).is_none() {
            unique.push((key, *spec));
        }
    }
    let solved = par_map(par, unique, |(key, spec)| {
        converged_spectrum(&spec, sector, n, tol).map(|s| (key, Arc::new(s)))
    });
    solved.into_iter().collect()
}

/// Verify the forward direction: every certified oscillator level λ_k in
/// the sector must reappear as the mapped μ_k in the spectrum of its own
/// two-photon operator.
pub fn verify_ncho_to_2qrm(
    p: &NchoParams,
    sector: ParitySector,
    opts: &VerifyOptions,
) -> Result<EquivalenceReport> {
    p.validate()?;
    let source = converged_spectrum(
        &ModelSpec::Ncho(*p),
        sector,
        opts.truncation,
        opts.certificate_tol,
    )?;
    let levels: Vec<f64> = source
        .certified()
        .iter()
        .take(opts.n_levels)
        .copied()
        .collect();

    let mapped: Vec<(TwoQrmParams, f64)> = levels
        .iter()
        .map(|&lambda| ncho_to_2qrm(p, lambda))
        .collect::<Result<_>>()?;
    let targets: Vec<ModelSpec> = mapped.iter().map(|(q, _)| ModelSpec::TwoQrm(*q)).collect();
    let cache = solve_batch(
        &targets,
        sector,
        opts.truncation,
        opts.certificate_tol,
        opts.parallelism,
    )?;

    let mut records = Vec::with_capacity(levels.len());
    for (&lambda, (q, mu)) in levels.iter().zip(&mapped) {
        let key = SolveKey::for_model(&ModelSpec::TwoQrm(*q), opts.truncation, sector);
        let spectrum = &cache[&key];
        let residual = nearest_eigenvalue(spectrum, *mu).map_or(f64::INFINITY, |(_, r)| r);
        records.push(MappingRecord {
            lambda,
            mu: *mu,
            ncho: *p,
            qrm: *q,
            residual,
        });
    }
    let all_matched = records.iter().all(|r| r.residual <= opts.match_tol);
    Ok(EquivalenceReport {
        direction: Direction::NchoTo2Qrm,
        sector,
        truncation_n: opts.truncation,
        tol: opts.match_tol,
        records,
        obstructed: Vec::new(),
        all_matched,
        unreliable: source.unreliable,
    })
}

/// Verify the reverse direction: certified two-photon levels μ_k with
/// |μ_k| > |Δ| must reappear as λ_k in the spectrum of the recovered
/// oscillator; levels with |μ_k| ≤ |Δ| are reported obstructed.
pub fn verify_2qrm_to_ncho(
    q: &TwoQrmParams,
    sector: ParitySector,
    opts: &VerifyOptions,
) -> Result<EquivalenceReport> {
    q.validate()?;
    let source = converged_spectrum(
        &ModelSpec::TwoQrm(*q),
        sector,
        opts.truncation,
        opts.certificate_tol,
    )?;
    let levels: Vec<f64> = source
        .certified()
        .iter()
        .take(opts.n_levels)
        .copied()
        .collect();

    let mut obstructed = Vec::new();
    let mut mapped: Vec<(usize, f64, NchoParams, f64)> = Vec::new();
    for (k, &mu) in levels.iter().enumerate() {
        match two_qrm_to_ncho(q, mu) {
            Ok((p, lambda)) => mapped.push((k, mu, p, lambda)),
            Err(Error::Obstruction(_)) => obstructed.push(ObstructedLevel { level: k, mu }),
            Err(e) => return Err(e),
        }
    }
    let targets: Vec<ModelSpec> = mapped
        .iter()
        .map(|(_, _, p, _)| ModelSpec::Ncho(*p))
        .collect();
    let cache = solve_batch(
        &targets,
        sector,
        opts.truncation,
        opts.certificate_tol,
        opts.parallelism,
    )?;

    let mut records = Vec::with_capacity(mapped.len());
    for (_, mu, p, lambda) in &mapped {
        let key = SolveKey::for_model(&ModelSpec::Ncho(*p), opts.truncation, sector);
        let spectrum = &cache[&key];
        let residual = nearest_eigenvalue(spectrum, *lambda).map_or(f64::INFINITY, |(_, r)| r);
        records.push(MappingRecord {
            lambda: *lambda,
            mu: *mu,
            ncho: *p,
            qrm: *q,
            residual,
        });
    }
    let all_matched = records.iter().all(|r| r.residual <= opts.match_tol);
    Ok(EquivalenceReport {
        direction: Direction::TwoQrmToNcho,
        sector,
        truncation_n: opts.truncation,
        tol: opts.match_tol,
        records,
        obstructed,
        all_matched,
        unreliable: source.unreliable,
    })
}

/// Entrywise deviations between the two-photon parity blocks and the
/// disk builds at ν = 1/2 (even) and ν = 3/2 (odd).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ParityDiskDeviation {
    pub even: f64,
    pub odd: f64,
}

/// The ν = 1/2 and 3/2 disk matrices are the even/odd two-photon blocks
/// in another orthonormal basis; the matrices must agree entry for entry.
pub fn verify_parity_disk_identity(
    q: &TwoQrmParams,
    photon_dim: usize,
) -> Result<ParityDiskDeviation> {
    let even = build_2qrm(q, photon_dim, ParitySector::Even)?;
    let disk_even = build_disk(&DiskParams::new(0.5, q.g, q.delta, q.epsilon)?, photon_dim)?;
    let odd = build_2qrm(q, photon_dim, ParitySector::Odd)?;
    let disk_odd = build_disk(&DiskParams::new(1.5, q.g, q.delta, q.epsilon)?, photon_dim)?;
    Ok(ParityDiskDeviation {
        even: max_entry_deviation(&even, &disk_even),
        odd: max_entry_deviation(&odd, &disk_odd),
    })
}

/// Max-entry deviations of the three dictionary identities.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DictionaryDeviations {
    /// a†a + 1/2 vs 2z d/dz + ν.
    pub number: f64,
    /// (1/2)a² vs d/dz.
    pub lowering: f64,
    /// (1/2)(a†)² vs z² d/dz + νz.
    pub raising: f64,
}

impl DictionaryDeviations {
    pub fn max(&self) -> f64 {
        self.number.max(self.lowering).max(self.raising)
    }
}

/// Check the operator dictionary at the matrix level: restrict a†a + 1/2,
/// (1/2)a², (1/2)(a†)² to the even (ν = 1/2) or odd (ν = 3/2) Fock
/// indices, build 2z d/dz + ν, d/dz, z² d/dz + νz in the Bergman basis,
/// and compare under the identification m ↔ 2m (+1 for the odd sector).
pub fn basis_correspondence_check(
    photon_dim: usize,
    sector: ParitySector,
) -> Result<DictionaryDeviations> {
    if photon_dim < 2 {
        return Err(Error::InvalidTruncation(
            "need at least 2 basis functions".into(),
        ));
    }
    let (offset, nu) = match sector {
        ParitySector::Even => (0usize, 0.5),
        ParitySector::Odd => (1usize, 1.5),
        ParitySector::Full => {
            return Err(Error::Parity("the dictionary is per parity sector".into()))
        }
    };
    let m = photon_dim;
    let max_dev = |a: &DMatrix<f64>, b: &DMatrix<f64>| -> f64 {
        let mut worst = 0.0f64;
        for j in 0..m {
            for i in 0..m {
                worst = worst.max((a[(i, j)] - b[(i, j)]).abs());
            }
        }
        worst
    };

    // number operator: diagonal in both pictures
    let mut fock = DMatrix::<f64>::zeros(m, m);
    let mut bergman = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        let idx = (2 * k + offset) as f64;
        fock[(k, k)] = idx + 0.5;
        bergman[(k, k)] = 2.0 * k as f64 + nu;
    }
    let number = max_dev(&fock, &bergman);

    // lowering: (1/2)a² sends |idx⟩ to (1/2)√(idx(idx−1)) |idx−2⟩,
    // d/dz sends e_k to √(k(k+ν−1)) e_{k−1}
    fock.fill(0.0);
    bergman.fill(0.0);
    for k in 1..m {
        let idx = (2 * k + offset) as f64;
        fock[(k - 1, k)] = 0.5 * (idx * (idx - 1.0)).sqrt();
        let kf = k as f64;
        bergman[(k - 1, k)] = (kf * (kf + nu - 1.0)).sqrt();
    }
    let lowering = max_dev(&fock, &bergman);

    // raising: (1/2)(a†)² vs z² d/dz + νz
    fock.fill(0.0);
    bergman.fill(0.0);
    for k in 0..m - 1 {
        let idx = (2 * k + offset) as f64;
        fock[(k + 1, k)] = 0.5 * ((idx + 1.0) * (idx + 2.0)).sqrt();
        let kf = k as f64;
        bergman[(k + 1, k)] = ((kf + 1.0) * (kf + nu)).sqrt();
    }
    let raising = max_dev(&fock, &bergman);

    Ok(DictionaryDeviations {
        number,
        lowering,
        raising,
    })
}
