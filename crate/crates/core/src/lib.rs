//! Truncated-matrix spectra and exact spectral correspondences for the
//! quantum Rabi model family.
//!
//! Four Hamiltonians on L²(ℝ) ⊗ ℂ² (or a weighted Bergman space ⊗ ℂ²)
//! are built as finite Hermitian matrices in their natural orthonormal
//! bases:
//!
//! * the η-shifted non-commutative harmonic oscillator (α, β, η);
//! * the two-photon Rabi model (g, Δ, ε), with exact even/odd photon
//!   parity blocks;
//! * a first-order holomorphic model on the weighted Bergman space
//!   H_ν(𝔻) ⊗ ℂ², which at ν = 1/2, 3/2 is the parity blocks of the
//!   two-photon model in a different basis, entry for entry;
//! * the one-photon asymmetric Rabi model (g′, Δ′, ε′).
//!
//! On top of the builders sit:
//!
//! * [`models`] — the exact parameter maps connecting the families,
//!   including the obstruction |μ| > |Δ| of the inverse map;
//! * [`spectrum`] — banded eigensolves with truncation-convergence
//!   certificates;
//! * [`equivalence`] — numerical verification that mapped eigenvalues
//!   land in the partner model's spectrum, plus the exact basis
//!   dictionary between Fock parity sectors and Bergman monomials;
//! * [`confluence`] — the ν → ∞ rescaling of the disk model onto the
//!   one-photon model, with measured convergence orders;
//! * [`degeneracy`] — integer quantization conditions necessary for
//!   twofold degeneracies, and parameter sweeps that hunt actual level
//!   crossings to test them.

pub mod banded;
pub mod confluence;
pub mod degeneracy;
pub mod equivalence;
mod error;
pub mod hamiltonian;
pub mod models;
pub mod parallel;
pub mod spectrum;

pub use error::{Error, Result};
pub use hamiltonian::{
    build, build_1qrm, build_2qrm, build_disk, build_ncho, parity_block, BasisDescriptor,
    BasisFamily, TruncatedHamiltonian,
};
pub use models::{
    confluence_scaling, inverse_scaling, mu_from_prime, mu_prime, ncho_to_2qrm, two_qrm_to_ncho,
    DiskParams, MappingRecord, ModelSpec, NchoParams, OneQrmParams, ParitySector, TwoQrmParams,
};
pub use parallel::Parallelism;
pub use spectrum::{converged_spectrum, eigenvalues, match_eigenvalue, SpectrumResult};
