//! Galerkin truncations of the four Hamiltonians in their explicit
//! orthonormal bases, plus parity-block extraction.
//!
//! Conventions, fixed across the crate:
//!
//! * photon-major ordering with the spin inside: matrix index
//!   `2·slot + spin`, where `slot` runs over the retained photon (or
//!   Bergman) basis functions and `spin ∈ {0 = up, 1 = down}`;
//! * an Even Fock sector retains photon numbers {0, 2, 4, …}, Odd
//!   retains {1, 3, 5, …}, Full retains {0, 1, …, N−1};
//! * pure Galerkin compression: couplings leaving the retained set are
//!   dropped with no boundary correction, which keeps every truncation
//!   Hermitian and its eigenvalues variational upper bounds;
//! * every matrix element is computed once and written to both symmetric
//!   (or conjugate) positions, so Hermiticity holds exactly, not up to
//!   rounding.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{DiskParams, ModelSpec, NchoParams, OneQrmParams, ParitySector, TwoQrmParams};

/// Which orthonormal basis a truncation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisFamily {
    /// Harmonic-oscillator number states |n⟩ (per spin component).
    FockNumber,
    /// Weighted Bergman monomials e_m = √((ν)_m/m!) z^m (per spin component).
    BergmanMonomial,
}

/// Basis metadata attached to a truncated Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisDescriptor {
    pub family: BasisFamily,
    pub parity: ParitySector,
    /// Bergman weight; present exactly for the monomial basis.
    pub nu_label: Option<f64>,
    /// Number of retained basis functions per spin component.
    pub photon_dim: usize,
}

impl BasisDescriptor {
    fn fock(parity: ParitySector, photon_dim: usize) -> Self {
        BasisDescriptor {
            family: BasisFamily::FockNumber,
            parity,
            nu_label: None,
            photon_dim,
        }
    }

    fn bergman(nu: f64, photon_dim: usize) -> Self {
        BasisDescriptor {
            family: BasisFamily::BergmanMonomial,
            parity: ParitySector::Full,
            nu_label: Some(nu),
            photon_dim,
        }
    }

    /// Photon number (Fock) or monomial degree (Bergman) of a slot.
    pub fn photon_index(&self, slot: usize) -> usize {
        match (self.family, self.parity) {
            (BasisFamily::FockNumber, ParitySector::Even) => 2 * slot,
            (BasisFamily::FockNumber, ParitySector::Odd) => 2 * slot + 1,
            _ => slot,
        }
    }

    /// Matrix dimension: two spin components per retained basis function.
    pub fn dim(&self) -> usize {
        2 * self.photon_dim
    }

    pub fn label(&self) -> String {
        match self.family {
            BasisFamily::FockNumber => format!("fock:{}", self.parity),
            BasisFamily::BergmanMonomial => {
                format!("bergman:nu={}", self.nu_label.unwrap_or(f64::NAN))
            }
        }
    }
}

/// Dense Hermitian storage; real models never pay for complex entries.
#[derive(Debug, Clone)]
pub enum MatrixData {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
}

/// A finite Hermitian truncation of one of the four Hamiltonians,
/// together with the basis it was assembled in.
#[derive(Debug, Clone)]
pub struct TruncatedHamiltonian {
    data: MatrixData,
    pub basis: BasisDescriptor,
    pub model: ModelSpec,
    /// Set when the model sits in the collapse regime (|g| ≥ 1/2, or
    /// αβ ≤ 1 for the oscillator): the build succeeds but truncated
    /// spectra do not converge to anything meaningful there.
    pub unreliable: bool,
}

impl TruncatedHamiltonian {
    pub fn dim(&self) -> usize {
        match &self.data {
            MatrixData::Real(m) => m.nrows(),
            MatrixData::Complex(m) => m.nrows(),
        }
    }

    /// True when every entry is real (everything except the η ≠ 0 NCHO).
    pub fn is_real(&self) -> bool {
        matches!(self.data, MatrixData::Real(_))
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        match &self.data {
            MatrixData::Real(m) => Complex64::new(m[(i, j)], 0.0),
            MatrixData::Complex(m) => m[(i, j)],
        }
    }

    pub fn data(&self) -> &MatrixData {
        &self.data
    }

    pub fn real_matrix(&self) -> Option<&DMatrix<f64>> {
        match &self.data {
            MatrixData::Real(m) => Some(m),
            MatrixData::Complex(_) => None,
        }
    }

    /// max_{ij} |H_ij − conj(H_ji)|; exactly zero for every builder here.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..=i {
                let d = (self.entry(i, j) - self.entry(j, i).conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Largest absolute entry (∞-norm of the entries, not the operator).
    pub fn max_entry(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max(self.entry(i, j).norm());
            }
        }
        worst
    }
}

/// Entrywise max difference between two truncations of equal dimension.
pub fn max_entry_deviation(a: &TruncatedHamiltonian, b: &TruncatedHamiltonian) -> f64 {
    assert_eq!(a.dim(), b.dim(), "dimension mismatch");
    let n = a.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a.entry(i, j) - b.entry(i, j)).norm());
        }
    }
    worst
}

fn check_truncation(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidTruncation(format!(
            "need at least 2 retained basis functions, got {n}"
        )));
    }
    Ok(())
}

/// Two-photon Rabi model H = (a†a + 1/2) ⊗ I + g σ₁(a² + a†²) + Δ σ₃ + ε σ₁
/// on the retained Fock sector. a² shifts the photon number by two, so
/// the Even/Odd sectors decouple exactly for every (g, Δ, ε).
pub fn build_2qrm(
    q: &TwoQrmParams,
    photon_dim: usize,
    sector: ParitySector,
) -> Result<TruncatedHamiltonian> {
    q.validate()?;
    check_truncation(photon_dim)?;
    let basis = BasisDescriptor::fock(sector, photon_dim);
    let mut m = DMatrix::<f64>::zeros(basis.dim(), basis.dim());
    let slot_step = if sector == ParitySector::Full { 2 } else { 1 };
    for slot in 0..photon_dim {
        let n = basis.photon_index(slot) as f64;
        let (r, c) = (2 * slot, 2 * slot);
        m[(r, c)] = n + 0.5 + q.delta;
        m[(r + 1, c + 1)] = n + 0.5 - q.delta;
        m[(r + 1, c)] = q.epsilon;
        m[(r, c + 1)] = q.epsilon;
        // coupling |n⟩ ↔ |n+2⟩, tensor σ₁, coefficient g√((n+1)(n+2))
        if slot + slot_step < photon_dim {
            let v = q.g * ((n + 1.0) * (n + 2.0)).sqrt();
            let hi = 2 * (slot + slot_step);
            m[(hi, r + 1)] = v;
            m[(r + 1, hi)] = v;
            m[(hi + 1, r)] = v;
            m[(r, hi + 1)] = v;
        }
    }
    Ok(TruncatedHamiltonian {
        data: MatrixData::Real(m),
        basis,
        model: ModelSpec::TwoQrm(*q),
        unreliable: !q.in_discrete_regime(),
    })
}

/// η-shifted non-commutative harmonic oscillator, in the rewritten ladder
/// form diag(α,β)(a†a + 1/2) + (1/2) J (a² − a†²) + 2η√(αβ−1) σ₂ with
/// `J = [[0,−1],[1,0]]`. Real symmetric at η = 0, complex Hermitian otherwise.
pub fn build_ncho(
    p: &NchoParams,
    photon_dim: usize,
    sector: ParitySector,
) -> Result<TruncatedHamiltonian> {
    p.validate()?;
    check_truncation(photon_dim)?;
    let basis = BasisDescriptor::fock(sector, photon_dim);
    let dim = basis.dim();
    let slot_step = if sector == ParitySector::Full { 2 } else { 1 };
    let shift = p.shift_coefficient();
    let unreliable = !p.in_discrete_regime();

    // writes the η = 0 part; the closure keeps real and complex
    // assemblies entrywise identical
    let fill_real = |set: &mut dyn FnMut(usize, usize, f64)| {
        for slot in 0..photon_dim {
            let n = basis.photon_index(slot) as f64;
            let r = 2 * slot;
            set(r, r, (n + 0.5) * p.alpha);
            set(r + 1, r + 1, (n + 0.5) * p.beta);
            if slot + slot_step < photon_dim {
                // (1/2)(a² − a†²) raising side is −(1/2)√((n+1)(n+2)),
                // tensored with J; the four entries below are the block
                // and its transpose
                let v = 0.5 * ((n + 1.0) * (n + 2.0)).sqrt();
                let hi = 2 * (slot + slot_step);
                set(hi, r + 1, v);
                set(r + 1, hi, v);
                set(hi + 1, r, -v);
                set(r, hi + 1, -v);
            }
        }
    };

    let data = if p.eta == 0.0 {
        let mut m = DMatrix::<f64>::zeros(dim, dim);
        fill_real(&mut |i, j, v| m[(i, j)] = v);
        MatrixData::Real(m)
    } else {
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        fill_real(&mut |i, j, v| m[(i, j)] = Complex64::new(v, 0.0));
        // σ₂ block 2η√(αβ−1) on every photon diagonal
        for slot in 0..photon_dim {
            let r = 2 * slot;
            m[(r, r + 1)] = Complex64::new(0.0, -shift);
            m[(r + 1, r)] = Complex64::new(0.0, shift);
        }
        MatrixData::Complex(m)
    };

    Ok(TruncatedHamiltonian {
        data,
        basis,
        model: ModelSpec::Ncho(*p),
        unreliable,
    })
}

/// One-photon asymmetric Rabi model H = a†a ⊗ I + g′σ₁(a + a†) + Δ′σ₃ + ε′σ₁.
/// No +1/2 on the photon term. Photon parity is not conserved, so only
/// the full basis exists.
pub fn build_1qrm(o: &OneQrmParams, photon_dim: usize) -> Result<TruncatedHamiltonian> {
    o.validate()?;
    check_truncation(photon_dim)?;
    let basis = BasisDescriptor::fock(ParitySector::Full, photon_dim);
    let mut m = DMatrix::<f64>::zeros(basis.dim(), basis.dim());
    for n in 0..photon_dim {
        let nf = n as f64;
        let r = 2 * n;
        m[(r, r)] = nf + o.delta_p;
        m[(r + 1, r + 1)] = nf - o.delta_p;
        m[(r + 1, r)] = o.epsilon_p;
        m[(r, r + 1)] = o.epsilon_p;
        if n + 1 < photon_dim {
            let v = o.g_p * (nf + 1.0).sqrt();
            let hi = 2 * (n + 1);
            m[(hi, r + 1)] = v;
            m[(r + 1, hi)] = v;
            m[(hi + 1, r)] = v;
            m[(r, hi + 1)] = v;
        }
    }
    Ok(TruncatedHamiltonian {
        data: MatrixData::Real(m),
        basis,
        model: ModelSpec::OneQrm(*o),
        unreliable: false,
    })
}

/// Holomorphic disk model H = (2z d/dz + ν) ⊗ I + 2g σ₁((1+z²) d/dz + νz) +
/// Δ σ₃ + ε σ₁ in the orthonormal monomial basis e_m = √((ν)_m/m!) z^m.
/// Always real symmetric. Only √(m(m+ν−1)) and √((m+1)(m+ν)) are ever
/// needed, so no Pochhammer value is materialized.
pub fn build_disk(d: &DiskParams, photon_dim: usize) -> Result<TruncatedHamiltonian> {
    d.validate()?;
    check_truncation(photon_dim)?;
    let basis = BasisDescriptor::bergman(d.nu, photon_dim);
    let mut m = DMatrix::<f64>::zeros(basis.dim(), basis.dim());
    for slot in 0..photon_dim {
        let mm = slot as f64;
        let r = 2 * slot;
        m[(r, r)] = 2.0 * mm + d.nu + d.delta;
        m[(r + 1, r + 1)] = 2.0 * mm + d.nu - d.delta;
        m[(r + 1, r)] = d.epsilon;
        m[(r, r + 1)] = d.epsilon;
        // e_m ↔ e_{m+1}: both d/dz (lowering, from above) and z²d/dz + νz
        // (raising, from below) give 2g√((m+1)(m+ν)) σ₁
        if slot + 1 < photon_dim {
            let v = 2.0 * d.g * ((mm + 1.0) * (mm + d.nu)).sqrt();
            let hi = 2 * (slot + 1);
            m[(hi, r + 1)] = v;
            m[(r + 1, hi)] = v;
            m[(hi + 1, r)] = v;
            m[(r, hi + 1)] = v;
        }
    }
    Ok(TruncatedHamiltonian {
        data: MatrixData::Real(m),
        basis,
        model: ModelSpec::Disk(*d),
        unreliable: !d.in_discrete_regime(),
    })
}

/// Build any model in a given sector. The single-parity pictures (disk)
/// and the parity-mixing one-photon model accept only `Full`.
pub fn build(
    spec: &ModelSpec,
    photon_dim: usize,
    sector: ParitySector,
) -> Result<TruncatedHamiltonian> {
    match spec {
        ModelSpec::Ncho(p) => build_ncho(p, photon_dim, sector),
        ModelSpec::TwoQrm(q) => build_2qrm(q, photon_dim, sector),
        ModelSpec::Disk(d) => {
            if sector != ParitySector::Full {
                return Err(Error::Parity(
                    "the disk model is already a single-parity picture".into(),
                ));
            }
            build_disk(d, photon_dim)
        }
        ModelSpec::OneQrm(o) => {
            if sector != ParitySector::Full {
                return Err(Error::Parity(
                    "the one-photon model does not conserve photon parity".into(),
                ));
            }
            build_1qrm(o, photon_dim)
        }
    }
}

/// Extract the even or odd photon block of a full Fock-basis build.
/// Defined for the parity-conserving models (NCHO, two-photon) only.
pub fn parity_block(
    h: &TruncatedHamiltonian,
    sector: ParitySector,
) -> Result<TruncatedHamiltonian> {
    if !matches!(h.model, ModelSpec::Ncho(_) | ModelSpec::TwoQrm(_)) {
        return Err(Error::Parity(format!(
            "{} does not conserve photon parity",
            h.model.family_name()
        )));
    }
    if h.basis.family != BasisFamily::FockNumber || h.basis.parity != ParitySector::Full {
        return Err(Error::Parity(
            "parity extraction needs a full Fock-basis build".into(),
        ));
    }
    let keep: Vec<usize> = match sector {
        ParitySector::Even => (0..h.basis.photon_dim).step_by(2).collect(),
        ParitySector::Odd => (1..h.basis.photon_dim).step_by(2).collect(),
        ParitySector::Full => return Err(Error::Parity("choose Even or Odd".into())),
    };
    let rows: Vec<usize> = keep.iter().flat_map(|&s| [2 * s, 2 * s + 1]).collect();
    let dim = rows.len();
    let basis = BasisDescriptor::fock(sector, keep.len());
    let data = match &h.data {
        MatrixData::Real(m) => {
            let mut out = DMatrix::<f64>::zeros(dim, dim);
            for (i, &ri) in rows.iter().enumerate() {
                for (j, &rj) in rows.iter().enumerate() {
                    out[(i, j)] = m[(ri, rj)];
                }
            }
            MatrixData::Real(out)
        }
        MatrixData::Complex(m) => {
            let mut out = DMatrix::<Complex64>::zeros(dim, dim);
            for (i, &ri) in rows.iter().enumerate() {
                for (j, &rj) in rows.iter().enumerate() {
                    out[(i, j)] = m[(ri, rj)];
                }
            }
            MatrixData::Complex(out)
        }
    };
    Ok(TruncatedHamiltonian {
        data,
        basis,
        model: h.model,
        unreliable: h.unreliable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ParitySector::{Even, Full, Odd};

    #[test]
    fn two_qrm_ladder_coefficients() {
        // a² + a†² sends |0⟩ to √2 |2⟩
        let q = TwoQrmParams::new(1.0, 0.0, 0.0).unwrap();
        let h = build_2qrm(&q, 4, Full).unwrap();
        // slot 0 spin 0 couples to slot 2 spin 1: entry (2*2+1, 0)
        assert_eq!(h.entry(5, 0).re, 2.0f64.sqrt());
    }

    #[test]
    fn two_qrm_decoupled_diagonal() {
        // eigenvalues are exactly the assembled diagonal {n + 1/2 ± Δ}
        let q = TwoQrmParams::new(0.0, 0.7, 0.0).unwrap();
        let h = build_2qrm(&q, 3, Full).unwrap();
        let mut diag: Vec<f64> = (0..6).map(|i| h.entry(i, i).re).collect();
        diag.sort_by(f64::total_cmp);
        let mut expected: Vec<f64> = vec![
            0.5 - 0.7,
            0.5 + 0.7,
            1.5 - 0.7,
            1.5 + 0.7,
            2.5 - 0.7,
            2.5 + 0.7,
        ];
        expected.sort_by(f64::total_cmp);
        assert_eq!(diag, expected);
    }

    #[test]
    fn two_qrm_parity_blocks_decouple() {
        // with ε = 0 or not, a² only links n to n±2: no entry between
        // even and odd photon slots of the full build
        let q = TwoQrmParams::new(0.3, 0.4, 0.2).unwrap();
        let h = build_2qrm(&q, 8, Full).unwrap();
        for i in 0..h.basis.photon_dim {
            for j in 0..h.basis.photon_dim {
                if (i + j) % 2 == 1 {
                    for a in 0..2 {
                        for b in 0..2 {
                            assert_eq!(h.entry(2 * i + a, 2 * j + b).norm(), 0.0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ncho_even_sector_diagonal() {
        let p = NchoParams::new(1.0, 1.0, 0.0).unwrap();
        let h = build_ncho(&p, 2, Even).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| h.entry(i, i).re).collect();
        assert_eq!(diag, vec![0.5, 0.5, 2.5, 2.5]);
        assert!(h.is_real());
        assert!(h.unreliable); // αβ = 1 collapse boundary
    }

    #[test]
    fn ncho_shift_block() {
        let p = NchoParams::new(2.0, 1.0, 0.3).unwrap();
        let h = build_ncho(&p, 3, Full).unwrap();
        assert!(!h.is_real());
        // 2·0.3·√(2−1) σ₂ on every photon diagonal
        assert_eq!(h.entry(0, 1), Complex64::new(0.0, -0.6));
        assert_eq!(h.entry(1, 0), Complex64::new(0.0, 0.6));
        assert_eq!(h.entry(4, 5), Complex64::new(0.0, -0.6));
    }

    #[test]
    fn hermiticity_is_exact() {
        let cases: Vec<TruncatedHamiltonian> = vec![
            build_2qrm(&TwoQrmParams::new(0.31, -0.7, 0.13).unwrap(), 9, Full).unwrap(),
            build_2qrm(&TwoQrmParams::new(0.31, -0.7, 0.13).unwrap(), 9, Odd).unwrap(),
            build_ncho(&NchoParams::new(2.7, 1.3, 0.0).unwrap(), 9, Full).unwrap(),
            build_ncho(&NchoParams::new(2.7, 1.3, -0.8).unwrap(), 9, Even).unwrap(),
            build_1qrm(&OneQrmParams::new(0.45, 0.2, -0.1).unwrap(), 9).unwrap(),
            build_disk(&DiskParams::new(1.5, 0.2, 0.4, 0.1).unwrap(), 9).unwrap(),
        ];
        for h in &cases {
            assert_eq!(h.hermiticity_deviation(), 0.0, "{}", h.model);
        }
    }

    #[test]
    fn truncations_nest() {
        let q = TwoQrmParams::new(0.21, 0.5, 0.1).unwrap();
        let small = build_2qrm(&q, 5, Even).unwrap();
        let large = build_2qrm(&q, 9, Even).unwrap();
        for i in 0..small.dim() {
            for j in 0..small.dim() {
                assert_eq!(small.entry(i, j), large.entry(i, j));
            }
        }
        let p = NchoParams::new(3.0, 2.0, 0.5).unwrap();
        let small = build_ncho(&p, 4, Full).unwrap();
        let large = build_ncho(&p, 11, Full).unwrap();
        for i in 0..small.dim() {
            for j in 0..small.dim() {
                assert_eq!(small.entry(i, j), large.entry(i, j));
            }
        }
    }

    #[test]
    fn one_qrm_first_coupling() {
        let o = OneQrmParams::new(0.37, 0.0, 0.0).unwrap();
        let h = build_1qrm(&o, 3).unwrap();
        // |0⟩ ↔ |1⟩ coupling is g′·√1
        assert_eq!(h.entry(2, 1).re, 0.37);
        assert_eq!(h.entry(3, 0).re, 0.37);
    }

    #[test]
    fn disk_first_raising_coefficient() {
        // ν = 1/2, m = 0: diagonal 0.5, raising 2g√(1·1/2) = g√2
        let d = DiskParams::new(0.5, 0.2, 0.0, 0.0).unwrap();
        let h = build_disk(&d, 3).unwrap();
        assert_eq!(h.entry(0, 0).re, 0.5);
        assert!((h.entry(2, 1).re - 0.2 * 2.0f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn disk_matches_even_two_qrm_block() {
        // ν = 1/2 is the even Fock sector in disguise; the matrices agree
        // entry for entry (here: exactly)
        let q = TwoQrmParams::new(0.22, -0.35, 0.4).unwrap();
        let even = build_2qrm(&q, 12, Even).unwrap();
        let d = DiskParams::new(0.5, q.g, q.delta, q.epsilon).unwrap();
        let disk = build_disk(&d, 12).unwrap();
        assert!(max_entry_deviation(&even, &disk) <= 1e-13);

        let odd = build_2qrm(&q, 12, Odd).unwrap();
        let d = DiskParams::new(1.5, q.g, q.delta, q.epsilon).unwrap();
        let disk = build_disk(&d, 12).unwrap();
        assert!(max_entry_deviation(&odd, &disk) <= 1e-13);
    }

    #[test]
    fn parity_block_splits_full_build() {
        let q = TwoQrmParams::new(0.3, 0.2, 0.7).unwrap();
        let full = build_2qrm(&q, 6, Full).unwrap();
        let even = parity_block(&full, Even).unwrap();
        let odd = parity_block(&full, Odd).unwrap();
        assert_eq!(even.basis.photon_dim, 3);
        assert_eq!(odd.basis.photon_dim, 3);
        // blocks agree with direct sector builds at matching truncations
        let even_direct = build_2qrm(&q, 3, Even).unwrap();
        let odd_direct = build_2qrm(&q, 3, Odd).unwrap();
        assert_eq!(max_entry_deviation(&even, &even_direct), 0.0);
        assert_eq!(max_entry_deviation(&odd, &odd_direct), 0.0);
        // the sector spectra together are the full spectrum, as multisets
        let ev = |h: &TruncatedHamiltonian| crate::spectrum::eigenvalues(h).unwrap().eigenvalues;
        let mut union = ev(&even);
        union.extend(ev(&odd));
        union.sort_by(f64::total_cmp);
        let full_ev = ev(&full);
        for (a, b) in union.iter().zip(&full_ev) {
            assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn parity_block_rejects_one_photon() {
        let o = OneQrmParams::new(0.3, 0.1, 0.0).unwrap();
        let h = build_1qrm(&o, 4).unwrap();
        assert!(matches!(parity_block(&h, Even), Err(Error::Parity(_))));
        assert!(matches!(
            build(&ModelSpec::OneQrm(o), 4, Even),
            Err(Error::Parity(_))
        ));
    }

    #[test]
    fn truncation_minimum() {
        let q = TwoQrmParams::new(0.1, 0.0, 0.0).unwrap();
        assert!(matches!(
            build_2qrm(&q, 1, Full),
            Err(Error::InvalidTruncation(_))
        ));
    }

    #[test]
    fn collapse_regime_flag() {
        let q = TwoQrmParams::new(0.5, 0.0, 0.0).unwrap();
        let h = build_2qrm(&q, 4, Full).unwrap();
        assert!(h.unreliable);
        let q = TwoQrmParams::new(0.49, 0.0, 0.0).unwrap();
        assert!(!build_2qrm(&q, 4, Full).unwrap().unreliable);
    }
}
