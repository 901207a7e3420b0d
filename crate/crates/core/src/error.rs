use thiserror::Error;

/// Errors shared by the model, builder, and verification layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Parameters violate a model invariant (α ≤ 0, η-shift below the
    /// αβ > 1 threshold, non-finite inputs, ...).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// No oscillator preimage exists: |μ| ≤ |Δ| leaves no positive
    /// (α, β) solving the inverse parameter map.
    #[error("obstructed: {0}")]
    Obstruction(String),

    /// Truncation size below the minimum the builder supports.
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    /// A parity sector was requested from a model that does not expose it.
    #[error("parity sector unavailable: {0}")]
    Parity(String),

    /// Outside the discrete-spectrum regime of the requested operation.
    #[error("outside the valid regime: {0}")]
    Regime(String),

    /// The eigenvalue iteration failed to converge. Never silently
    /// truncated; callers see the failure.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
