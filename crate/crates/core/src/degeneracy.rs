//! Integer quantization conditions necessary for twofold eigenvalue
//! degeneracies, and parameter sweeps that hunt actual level crossings
//! to test them against.
//!
//! The conditions are necessary, never sufficient: a detected crossing
//! violating its condition is a defect, a condition satisfied without a
//! crossing is unremarkable. Degeneracy itself is decided by the gap
//! between certified adjacent eigenvalues; a refined minimum gap in
//! (gap_threshold, avoided_ceiling] is labeled avoided/unresolved and
//! stays out of the necessity verdict, since a finite truncation cannot
//! separate a true crossing from an avoided one below the certificate
//! noise floor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::build;
use crate::models::{ModelSpec, NchoParams, OneQrmParams, ParitySector, TwoQrmParams};
use crate::parallel::{par_map, Parallelism};
use crate::spectrum::{converged_spectrum, eigenvalues};

/// Evaluation of one integer condition: the first quantity must sit near
/// an integer, and at least one of the two sign branches of the second
/// must sit near a nonnegative integer.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntegerConditionDiagnostic {
    /// [first, second (− branch), second (+ branch)].
    pub raw_values: Vec<f64>,
    pub nearest_integers: Vec<i64>,
    pub deviations: Vec<f64>,
    pub satisfied: bool,
}

fn diagnose(
    first: f64,
    second_minus: f64,
    second_plus: f64,
    tol_int: f64,
) -> IntegerConditionDiagnostic {
    let near = |x: f64| {
        let n = x.round();
        (n as i64, (x - n).abs())
    };
    let (n0, d0) = near(first);
    let (n1, d1) = near(second_minus);
    let (n2, d2) = near(second_plus);
    let first_ok = d0 <= tol_int;
    let minus_ok = d1 <= tol_int && n1 >= 0;
    let plus_ok = d2 <= tol_int && n2 >= 0;
    IntegerConditionDiagnostic {
        raw_values: vec![first, second_minus, second_plus],
        nearest_integers: vec![n0, n1, n2],
        deviations: vec![d0, d1, d2],
        satisfied: first_ok && (minus_ok || plus_ok),
    }
}

/// Two-photon condition at a level μ of the given parity sector
/// (ν = 1/2 even, 3/2 odd):
/// ε/√(1−4g²) ∈ ℤ and (μ∓ε)/(2√(1−4g²)) − ν/2 ∈ ℤ≥0.
pub fn check_2qrm_condition(
    q: &TwoQrmParams,
    mu: f64,
    sector: ParitySector,
    tol_int: f64,
) -> Result<IntegerConditionDiagnostic> {
    q.validate()?;
    if q.g.abs() >= 0.5 {
        return Err(Error::Regime(format!(
            "the quantization condition needs |g| < 1/2, got {}",
            q.g
        )));
    }
    let nu = sector
        .nu_label()
        .ok_or_else(|| Error::Parity("choose the even or odd sector".into()))?;
    let s = (1.0 - 4.0 * q.g * q.g).sqrt();
    Ok(diagnose(
        q.epsilon / s,
        (mu - q.epsilon) / (2.0 * s) - nu / 2.0,
        (mu + q.epsilon) / (2.0 * s) - nu / 2.0,
        tol_int,
    ))
}

/// Oscillator condition at a level λ of the given sector:
/// 2η ∈ ℤ and (λ/4)(α+β)/√(αβ(αβ−1)) ± η − ν/2 ∈ ℤ≥0.
/// The branches line up with the two-photon branches under the parameter
/// map: ε/√(1−4g²) = −2η, so the (μ−ε) branch transports to base + η.
pub fn check_ncho_condition(
    p: &NchoParams,
    lambda: f64,
    sector: ParitySector,
    tol_int: f64,
) -> Result<IntegerConditionDiagnostic> {
    p.validate()?;
    let ab = p.alpha * p.beta;
    if ab <= 1.0 {
        return Err(Error::InvalidParams(format!(
            "the quantization condition needs alpha*beta > 1, got {ab}"
        )));
    }
    let nu = sector
        .nu_label()
        .ok_or_else(|| Error::Parity("choose the even or odd sector".into()))?;
    let base = 0.25 * lambda * (p.alpha + p.beta) / (ab * (ab - 1.0)).sqrt();
    Ok(diagnose(
        2.0 * p.eta,
        base + p.eta - nu / 2.0,
        base - p.eta - nu / 2.0,
        tol_int,
    ))
}

/// One-photon condition at a level μ′: 2ε′ ∈ ℤ and μ′ + g′² ∓ ε′ ∈ ℤ≥0.
pub fn check_1qrm_condition(
    o: &OneQrmParams,
    mu_p: f64,
    tol_int: f64,
) -> IntegerConditionDiagnostic {
    let base = mu_p + o.g_p * o.g_p;
    diagnose(
        2.0 * o.epsilon_p,
        base - o.epsilon_p,
        base + o.epsilon_p,
        tol_int,
    )
}

/// Which scalar parameter of the base model a sweep varies. For the
/// one-photon model, `G`, `Delta`, `Epsilon` address the primed triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweptParameter {
    G,
    Delta,
    Epsilon,
    Alpha,
    Beta,
    Eta,
}

impl SweptParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweptParameter::G => "g",
            SweptParameter::Delta => "delta",
            SweptParameter::Epsilon => "epsilon",
            SweptParameter::Alpha => "alpha",
            SweptParameter::Beta => "beta",
            SweptParameter::Eta => "eta",
        }
    }

    fn apply(self, base: &ModelSpec, value: f64) -> Result<ModelSpec> {
        let mismatch = || {
            Error::InvalidParams(format!(
                "parameter {} does not exist on the {} model",
                self.name(),
                base.family_name()
            ))
        };
        Ok(match (base, self) {
            (ModelSpec::TwoQrm(q), SweptParameter::G) => {
                ModelSpec::TwoQrm(TwoQrmParams { g: value, ..*q })
            }
            (ModelSpec::TwoQrm(q), SweptParameter::Delta) => {
                ModelSpec::TwoQrm(TwoQrmParams { delta: value, ..*q })
            }
            (ModelSpec::TwoQrm(q), SweptParameter::Epsilon) => ModelSpec::TwoQrm(TwoQrmParams {
                epsilon: value,
                ..*q
            }),
            (ModelSpec::OneQrm(o), SweptParameter::G) => {
                ModelSpec::OneQrm(OneQrmParams { g_p: value, ..*o })
            }
            (ModelSpec::OneQrm(o), SweptParameter::Delta) => ModelSpec::OneQrm(OneQrmParams {
                delta_p: value,
                ..*o
            }),
            (ModelSpec::OneQrm(o), SweptParameter::Epsilon) => ModelSpec::OneQrm(OneQrmParams {
                epsilon_p: value,
                ..*o
            }),
            (ModelSpec::Ncho(p), SweptParameter::Alpha) => {
                ModelSpec::Ncho(NchoParams { alpha: value, ..*p })
            }
            (ModelSpec::Ncho(p), SweptParameter::Beta) => {
                ModelSpec::Ncho(NchoParams { beta: value, ..*p })
            }
            (ModelSpec::Ncho(p), SweptParameter::Eta) => {
                ModelSpec::Ncho(NchoParams { eta: value, ..*p })
            }
            _ => return Err(mismatch()),
        })
    }
}

/// A one-parameter sweep of a base model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: ModelSpec,
    pub parameter: SweptParameter,
    pub start: f64,
    pub end: f64,
    /// Number of grid points, endpoints included.
    pub grid: usize,
}

/// Label attached to a refined gap minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingKind {
    /// Certified gap at or below the crossing threshold.
    Crossing,
    /// Certified gap between the crossing threshold and the avoided
    /// ceiling: unresolvable at this truncation.
    Avoided,
}

/// One detected (or unresolved) spectral degeneracy.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossingRecord {
    pub swept_parameter_name: String,
    pub swept_value: f64,
    /// Midpoint of the two colliding eigenvalues.
    pub eigen_value: f64,
    /// Certified gap at the refined parameter.
    pub min_gap: f64,
    /// Index of the lower level of the colliding pair.
    pub level: usize,
    pub kind: CrossingKind,
    pub diagnostics: IntegerConditionDiagnostic,
}

/// Knobs for [`scan_crossings`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScanOptions {
    /// Number of adjacent-level gaps tracked (levels 0..n_levels+1).
    pub n_levels: usize,
    pub truncation: usize,
    pub certificate_tol: f64,
    /// Refined certified gap at or below this is a crossing.
    pub gap_threshold: f64,
    /// Refined certified gap in (gap_threshold, avoided_ceiling] is
    /// recorded as avoided; anything larger is discarded as resolved.
    pub avoided_ceiling: f64,
    /// Grid-level local minima below this get refined. The grid cannot
    /// see gaps near the crossing threshold directly (the minimum gap on
    /// a grid scales with the spacing times the level slopes), so this
    /// prefilter is orders of magnitude looser than `gap_threshold`.
    pub candidate_gap: f64,
    /// Integer-condition tolerance for the diagnostics.
    pub tol_int: f64,
    /// Golden-section refinement stops at this parameter width.
    pub param_tol: f64,
    pub parallelism: Parallelism,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            n_levels: 8,
            truncation: 400,
            certificate_tol: 1e-9,
            gap_threshold: 1e-8,
            avoided_ceiling: 1e-6,
            candidate_gap: 1e-2,
            tol_int: 1e-5,
            param_tol: 1e-10,
            parallelism: Parallelism::default(),
        }
    }
}

/// Gaps between the lowest `n_levels + 1` eigenvalues at one parameter
/// value, from a single (uncertified) solve.
fn gaps_at(
    sweep: &SweepSpec,
    sector: ParitySector,
    opts: &ScanOptions,
    value: f64,
) -> Result<Vec<f64>> {
    let spec = sweep.parameter.apply(&sweep.base, value)?;
    let h = build(&spec, opts.truncation, sector)?;
    let s = eigenvalues(&h)?;
    let take = (opts.n_levels + 1).min(s.eigenvalues.len());
    Ok(s.eigenvalues[..take]
        .windows(2)
        .map(|w| w[1] - w[0])
        .collect())
}

/// Golden-section minimization of a unimodal bracket.
fn golden_min(
    mut a: f64,
    mut b: f64,
    tol: f64,
    mut f: impl FnMut(f64) -> Result<f64>,
) -> Result<f64> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut guard = 0;
    while (b - a).abs() > tol && guard < 300 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
        guard += 1;
    }
    Ok(0.5 * (a + b))
}

/// Sweep one parameter over a grid, locate local minima of the adjacent
/// level gaps, refine each candidate by golden section, and record every
/// refined minimum whose certified gap is at or below the avoided
/// ceiling, with the model's integer-condition diagnostic attached.
pub fn scan_crossings(
    sweep: &SweepSpec,
    sector: ParitySector,
    opts: &ScanOptions,
) -> Result<Vec<CrossingRecord>> {
    if sweep.grid < 3 {
        return Err(Error::InvalidParams("need at least 3 grid points".into()));
    }
    if sweep.start.is_nan() || sweep.end.is_nan() || sweep.start >= sweep.end {
        return Err(Error::InvalidParams("sweep range must be nonempty".into()));
    }
    // the whole range must stay inside the discrete regime
    for value in [sweep.start, sweep.end] {
        let spec = sweep.parameter.apply(&sweep.base, value)?;
        spec.validate()?;
        if !spec.in_discrete_regime() {
            return Err(Error::Regime(format!(
                "{}={value} leaves the discrete regime",
                sweep.parameter.name()
            )));
        }
    }

    let step = (sweep.end - sweep.start) / (sweep.grid - 1) as f64;
    let grid: Vec<f64> = (0..sweep.grid)
        .map(|i| sweep.start + step * i as f64)
        .collect();

    let gap_rows: Vec<Result<Vec<f64>>> = par_map(opts.parallelism, grid.clone(), |t| {
        gaps_at(sweep, sector, opts, t)
    });
    let gap_rows: Vec<Vec<f64>> = gap_rows.into_iter().collect::<Result<_>>()?;
    let n_gaps = gap_rows.iter().map(|r| r.len()).min().unwrap_or(0);

    // local minima below the candidate ceiling, merging plateau runs
    let mut candidates: Vec<(usize, usize)> = Vec::new(); // (gap index k, grid index i)
    #[allow(clippy::needless_range_loop)]
    for k in 0..n_gaps {
        let mut i = 0;
        while i < grid.len() {
            let g = gap_rows[i][k];
            let left_ok = i == 0 || gap_rows[i - 1][k] >= g;
            let right_ok = i + 1 == grid.len() || gap_rows[i + 1][k] >= g;
            if g <= opts.candidate_gap && left_ok && right_ok {
                // swallow a flat run so a degenerate family yields one
                // candidate per plateau, not one per grid point
                let mut j = i;
                while j + 1 < grid.len() && gap_rows[j + 1][k] == g {
                    j += 1;
                }
                candidates.push((k, i + (j - i) / 2));
                i = j + 1;
            } else {
                i += 1;
            }
        }
    }

    let refined = par_map(
        opts.parallelism,
        candidates,
        |(k, i)| -> Result<Option<CrossingRecord>> {
            let lo = grid[i.saturating_sub(1)];
            let hi = grid[(i + 1).min(grid.len() - 1)];
            let t_star = golden_min(lo, hi, opts.param_tol, |t| {
                gaps_at(sweep, sector, opts, t).map(|g| g[k])
            })?;
            // the verdict uses certified eigenvalues only
            let spec = sweep.parameter.apply(&sweep.base, t_star)?;
            let certified =
                converged_spectrum(&spec, sector, opts.truncation, opts.certificate_tol)?;
            if certified.converged_count < k + 2 {
                return Ok(None); // gap not certifiable at this truncation
            }
            let lo_ev = certified.eigenvalues[k];
            let hi_ev = certified.eigenvalues[k + 1];
            let min_gap = hi_ev - lo_ev;
            let kind = if min_gap <= opts.gap_threshold {
                CrossingKind::Crossing
            } else if min_gap <= opts.avoided_ceiling {
                CrossingKind::Avoided
            } else {
                return Ok(None); // resolved apart: not a degeneracy
            };
            let eigen_value = 0.5 * (lo_ev + hi_ev);
            let diagnostics = match &spec {
                ModelSpec::TwoQrm(q) => check_2qrm_condition(q, eigen_value, sector, opts.tol_int)?,
                ModelSpec::Ncho(p) => check_ncho_condition(p, eigen_value, sector, opts.tol_int)?,
                ModelSpec::OneQrm(o) => check_1qrm_condition(o, eigen_value, opts.tol_int),
                ModelSpec::Disk(_) => {
                    return Err(Error::InvalidParams(
                        "no integer condition is defined for a general disk weight".into(),
                    ))
                }
            };
            Ok(Some(CrossingRecord {
                swept_parameter_name: sweep.parameter.name().to_string(),
                swept_value: t_star,
                eigen_value,
                min_gap,
                level: k,
                kind,
                diagnostics,
            }))
        },
    );

    let mut records: Vec<CrossingRecord> = Vec::new();
    for r in refined {
        if let Some(rec) = r? {
            records.push(rec);
        }
    }
    records.sort_by(|a, b| {
        a.swept_value
            .total_cmp(&b.swept_value)
            .then(a.level.cmp(&b.level))
    });
    Ok(records)
}
