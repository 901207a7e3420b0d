//! Parameter types for the four model families and the exact parameter
//! maps connecting them.
//!
//! Everything in this module is plain real arithmetic: no matrices, no
//! tolerances. Tolerances belong to the verifiers that consume these maps.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Parameters (α, β, η) of the η-shifted non-commutative harmonic
/// oscillator. The shift term carries the factor η√(αβ−1), so η ≠ 0
/// requires αβ > 1 for the operator to stay Hermitian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NchoParams {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
}

impl NchoParams {
    pub fn new(alpha: f64, beta: f64, eta: f64) -> Result<Self> {
        let p = NchoParams { alpha, beta, eta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.beta.is_finite() && self.eta.is_finite()) {
            return Err(Error::InvalidParams(
                "NCHO parameters must be finite".into(),
            ));
        }
        if self.alpha <= 0.0 || self.beta <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "alpha and beta must be positive (got alpha={}, beta={})",
                self.alpha, self.beta
            )));
        }
        if self.eta != 0.0 && self.alpha * self.beta <= 1.0 {
            return Err(Error::InvalidParams(format!(
                "eta != 0 requires alpha*beta > 1 (got alpha*beta={})",
                self.alpha * self.beta
            )));
        }
        Ok(())
    }

    /// Coefficient 2η√(αβ−1) of the σ₂ shift block.
    pub fn shift_coefficient(&self) -> f64 {
        if self.eta == 0.0 {
            0.0
        } else {
            2.0 * self.eta * (self.alpha * self.beta - 1.0).sqrt()
        }
    }

    /// Discrete spectrum requires αβ > 1; at αβ = 1 the spectrum is
    /// continuous and a truncation cannot represent it.
    pub fn in_discrete_regime(&self) -> bool {
        self.alpha * self.beta > 1.0
    }
}

impl fmt::Display for NchoParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha={} beta={} eta={}",
            self.alpha, self.beta, self.eta
        )
    }
}

/// Parameters (g, Δ, ε) of the two-photon Rabi model
/// H = (a†a + 1/2) ⊗ I + g σ₁(a² + a†²) + Δ σ₃ + ε σ₁.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQrmParams {
    pub g: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl TwoQrmParams {
    pub fn new(g: f64, delta: f64, epsilon: f64) -> Result<Self> {
        let q = TwoQrmParams { g, delta, epsilon };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.g.is_finite() && self.delta.is_finite() && self.epsilon.is_finite()) {
            return Err(Error::InvalidParams(
                "2QRM parameters must be finite".into(),
            ));
        }
        Ok(())
    }

    /// |g| < 1/2 marks the discrete regime; at |g| ≥ 1/2 the spectrum
    /// (partially) collapses and truncated spectra stop converging.
    pub fn in_discrete_regime(&self) -> bool {
        self.g.abs() < 0.5
    }
}

impl fmt::Display for TwoQrmParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g={} delta={} epsilon={}",
            self.g, self.delta, self.epsilon
        )
    }
}

/// Parameters (ν, g, Δ, ε) of the first-order holomorphic model on the
/// weighted Bergman space H_ν(D) ⊗ C²,
/// H = (2z d/dz + ν) ⊗ I + 2g σ₁((1+z²) d/dz + νz) + Δ σ₃ + ε σ₁.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskParams {
    pub nu: f64,
    pub g: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl DiskParams {
    pub fn new(nu: f64, g: f64, delta: f64, epsilon: f64) -> Result<Self> {
        let d = DiskParams {
            nu,
            g,
            delta,
            epsilon,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu.is_finite()
            && self.g.is_finite()
            && self.delta.is_finite()
            && self.epsilon.is_finite())
        {
            return Err(Error::InvalidParams(
                "disk parameters must be finite".into(),
            ));
        }
        if self.nu <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "nu must be positive (got {})",
                self.nu
            )));
        }
        Ok(())
    }

    pub fn in_discrete_regime(&self) -> bool {
        self.g.abs() < 0.5
    }
}

impl fmt::Display for DiskParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nu={} g={} delta={} epsilon={}",
            self.nu, self.g, self.delta, self.epsilon
        )
    }
}

/// Parameters (g′, Δ′, ε′) of the one-photon asymmetric Rabi model
/// H = a†a ⊗ I + g′ σ₁(a + a†) + Δ′ σ₃ + ε′ σ₁. Note there is no +1/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneQrmParams {
    pub g_p: f64,
    pub delta_p: f64,
    pub epsilon_p: f64,
}

impl OneQrmParams {
    pub fn new(g_p: f64, delta_p: f64, epsilon_p: f64) -> Result<Self> {
        let o = OneQrmParams {
            g_p,
            delta_p,
            epsilon_p,
        };
        o.validate()?;
        Ok(o)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.g_p.is_finite() && self.delta_p.is_finite() && self.epsilon_p.is_finite()) {
            return Err(Error::InvalidParams(
                "1QRM parameters must be finite".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for OneQrmParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gp={} dp={} ep={}",
            self.g_p, self.delta_p, self.epsilon_p
        )
    }
}

/// Photon-parity sector. The NCHO and the two-photon model conserve
/// photon parity; the Bergman-basis models are single-parity pictures
/// (Even ↔ ν-label 1/2, Odd ↔ 3/2); the one-photon model mixes parities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParitySector {
    Even,
    Odd,
    Full,
}

impl ParitySector {
    /// Bergman weight label of the sector, when it has one.
    pub fn nu_label(self) -> Option<f64> {
        match self {
            ParitySector::Even => Some(0.5),
            ParitySector::Odd => Some(1.5),
            ParitySector::Full => None,
        }
    }
}

impl fmt::Display for ParitySector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParitySector::Even => write!(f, "even"),
            ParitySector::Odd => write!(f, "odd"),
            ParitySector::Full => write!(f, "full"),
        }
    }
}

/// Tagged union of the four model families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ModelSpec {
    Ncho(NchoParams),
    TwoQrm(TwoQrmParams),
    Disk(DiskParams),
    OneQrm(OneQrmParams),
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::Ncho(p) => p.validate(),
            ModelSpec::TwoQrm(q) => q.validate(),
            ModelSpec::Disk(d) => d.validate(),
            ModelSpec::OneQrm(o) => o.validate(),
        }
    }

    /// False in the collapse regime (|g| ≥ 1/2, or αβ ≤ 1 for the NCHO),
    /// where truncated spectra carry no meaning.
    pub fn in_discrete_regime(&self) -> bool {
        match self {
            ModelSpec::Ncho(p) => p.in_discrete_regime(),
            ModelSpec::TwoQrm(q) => q.in_discrete_regime(),
            ModelSpec::Disk(d) => d.in_discrete_regime(),
            ModelSpec::OneQrm(_) => true,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            ModelSpec::Ncho(_) => "ncho",
            ModelSpec::TwoQrm(_) => "2qrm",
            ModelSpec::Disk(_) => "disk",
            ModelSpec::OneQrm(_) => "1qrm",
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Ncho(p) => write!(f, "ncho {p}"),
            ModelSpec::TwoQrm(q) => write!(f, "2qrm {q}"),
            ModelSpec::Disk(d) => write!(f, "disk {d}"),
            ModelSpec::OneQrm(o) => write!(f, "1qrm {o}"),
        }
    }
}

/// One verified (λ, α, β, η) ↔ (μ, g, Δ, ε) correspondence instance.
/// The map relations between the stored fields hold exactly by
/// construction; `residual` is the spectral matching distance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MappingRecord {
    pub lambda: f64,
    pub mu: f64,
    pub ncho: NchoParams,
    pub qrm: TwoQrmParams,
    pub residual: f64,
}

// ── parameter maps ──────────────────────────────────────────────────

/// Map an NCHO eigenvalue problem at (α, β, η; λ) to the equivalent
/// two-photon Rabi problem (g, Δ, ε; μ):
///
///   g = 1/(2√(αβ)),  ε = −2η√(αβ−1)/√(αβ),
///   μ = (λ/2)(α⁻¹ + β⁻¹),  Δ = −(λ/2)(α⁻¹ − β⁻¹).
///
/// Δ and μ depend on the eigenvalue λ, so each oscillator level selects
/// its own Rabi operator.
pub fn ncho_to_2qrm(p: &NchoParams, lambda: f64) -> Result<(TwoQrmParams, f64)> {
    p.validate()?;
    if !lambda.is_finite() {
        return Err(Error::InvalidParams("lambda must be finite".into()));
    }
    let ab = p.alpha * p.beta;
    let sqrt_ab = ab.sqrt();
    let g = 1.0 / (2.0 * sqrt_ab);
    let epsilon = if p.eta == 0.0 {
        0.0
    } else {
        -2.0 * p.eta * (ab - 1.0).sqrt() / sqrt_ab
    };
    let mu = 0.5 * lambda * (p.alpha.recip() + p.beta.recip());
    let delta = -0.5 * lambda * (p.alpha.recip() - p.beta.recip());
    Ok((TwoQrmParams { g, delta, epsilon }, mu))
}

/// Inverse of [`ncho_to_2qrm`]: recover (α, β, η; λ) from (g, Δ, ε; μ).
///
/// A positive pair (α, β) exists only when |μ| > |Δ| (the obstruction);
/// an η over the reals additionally needs αβ > 1 whenever ε ≠ 0, and
/// αβ = 1/(4g²), so |g| ≥ 1/2 with ε ≠ 0 has no η-shifted preimage.
pub fn two_qrm_to_ncho(q: &TwoQrmParams, mu: f64) -> Result<(NchoParams, f64)> {
    q.validate()?;
    if !mu.is_finite() {
        return Err(Error::InvalidParams("mu must be finite".into()));
    }
    if q.g == 0.0 {
        return Err(Error::InvalidParams("inverse map requires g != 0".into()));
    }
    if mu.abs() <= q.delta.abs() {
        // Covers mu = delta = 0 as well: the ratio alpha/beta degenerates.
        return Err(Error::Obstruction(format!(
            "|mu| <= |delta| ({} <= {}): no positive (alpha, beta) exists",
            mu.abs(),
            q.delta.abs()
        )));
    }
    let ab = 1.0 / (4.0 * q.g * q.g);
    // (|mu|-|delta|)(|mu|+|delta|) keeps the sign exact near the boundary.
    let lambda_mag =
        ((mu.abs() - q.delta.abs()) * (mu.abs() + q.delta.abs())).sqrt() / (2.0 * q.g.abs());
    let lambda = mu.signum() * lambda_mag;
    let alpha = lambda / (mu - q.delta);
    let beta = lambda / (mu + q.delta);
    let eta = if q.epsilon == 0.0 {
        0.0
    } else {
        if ab <= 1.0 {
            return Err(Error::InvalidParams(format!(
                "epsilon != 0 requires alpha*beta > 1, but alpha*beta = 1/(4g^2) = {ab}"
            )));
        }
        -q.epsilon * ab.sqrt() / (2.0 * (ab - 1.0).sqrt())
    };
    let p = NchoParams { alpha, beta, eta };
    p.validate()?;
    Ok((p, lambda))
}

/// Rescale disk-model parameters into one-photon Rabi parameters:
/// g′ = √ν g, Δ′ = Δ/2, ε′ = ε/2.
pub fn confluence_scaling(d: &DiskParams) -> OneQrmParams {
    OneQrmParams {
        g_p: d.nu.sqrt() * d.g,
        delta_p: 0.5 * d.delta,
        epsilon_p: 0.5 * d.epsilon,
    }
}

/// Inverse of [`confluence_scaling`] at a given weight ν:
/// g = g′/√ν, Δ = 2Δ′, ε = 2ε′.
pub fn inverse_scaling(o: &OneQrmParams, nu: f64) -> Result<DiskParams> {
    DiskParams::new(nu, o.g_p / nu.sqrt(), 2.0 * o.delta_p, 2.0 * o.epsilon_p)
}

/// Affine eigenvalue shift of the confluence: μ′ = (μ − ν)/2.
pub fn mu_prime(mu: f64, nu: f64) -> f64 {
    0.5 * (mu - nu)
}

/// Inverse of [`mu_prime`]: μ = 2μ′ + ν.
pub fn mu_from_prime(mu_p: f64, nu: f64) -> f64 {
    2.0 * mu_p + nu
}
