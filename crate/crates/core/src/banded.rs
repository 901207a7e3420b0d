//! Eigenvalues of symmetric banded matrices.
//!
//! Every Hamiltonian built in this crate is banded with half-bandwidth
//! at most 5 in the photon-major ordering, so the full-spectrum solves
//! that dominate the sweeps run through a band-aware path: a Givens
//! bulge-chasing reduction to tridiagonal form (O(n²·b)) followed by the
//! implicit-shift QL iteration for eigenvalues only (O(n²)). A dense
//! O(n³) solve at the production sizes (n ≈ 1200–3600) would be two
//! orders of magnitude slower.
//!
//! Complex Hermitian input is handled through the interleaved real
//! embedding: each entry x+iy becomes the 2×2 block [[x, −y], [y, x]],
//! which is symmetric and banded with half-bandwidth 2b+1 and carries
//! every eigenvalue of the original matrix exactly twice.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Symmetric banded matrix, lower storage: `bands[d][j] = A[j+d, j]`.
#[derive(Debug, Clone)]
pub struct SymmetricBand {
    n: usize,
    bands: Vec<Vec<f64>>,
}

impl SymmetricBand {
    /// Extract the band of a dense symmetric matrix. Only the lower
    /// triangle is read. `half_bandwidth` entries below the diagonal are
    /// kept; anything outside is assumed (not checked) to be zero.
    pub fn from_dense_lower(a: &DMatrix<f64>, half_bandwidth: usize) -> Self {
        let n = a.nrows();
        let bw = half_bandwidth.min(n.saturating_sub(1));
        let bands = (0..=bw)
            .map(|d| (0..n - d).map(|j| a[(j + d, j)]).collect())
            .collect();
        SymmetricBand { n, bands }
    }

    /// Interleaved real embedding of a dense Hermitian matrix: the entry
    /// x+iy becomes the 2×2 block [[x, −y], [y, x]]. Only the lower
    /// triangle of `a` is read; the diagonal must be real.
    pub fn from_dense_hermitian(a: &DMatrix<Complex64>, half_bandwidth: usize) -> Self {
        let n = a.nrows();
        let bw = half_bandwidth.min(n.saturating_sub(1));
        let nn = 2 * n;
        let bbw = (2 * bw + 1).min(nn.saturating_sub(1));
        let mut bands: Vec<Vec<f64>> = (0..=bbw).map(|d| vec![0.0; nn - d]).collect();
        for j in 0..n {
            debug_assert_eq!(a[(j, j)].im, 0.0, "Hermitian diagonal must be real");
            bands[0][2 * j] = a[(j, j)].re;
            bands[0][2 * j + 1] = a[(j, j)].re;
            for i in (j + 1)..(j + bw + 1).min(n) {
                let z = a[(i, j)];
                // with i > j all four block entries sit in the lower triangle
                bands[2 * (i - j)][2 * j] = z.re;
                bands[2 * (i - j)][2 * j + 1] = z.re;
                bands[2 * (i - j) + 1][2 * j] = z.im;
                bands[2 * (i - j) - 1][2 * j + 1] = -z.im;
            }
        }
        SymmetricBand { n: nn, bands }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn get(&self, d: usize, j: usize) -> f64 {
        self.bands[d][j]
    }

    #[inline]
    fn set(&mut self, d: usize, j: usize, v: f64) {
        self.bands[d][j] = v;
    }

    /// Reduce to symmetric tridiagonal form by Givens bulge chasing,
    /// one band at a time from the outermost inward. Returns the
    /// diagonal and subdiagonal.
    pub fn tridiagonalize(mut self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let bw = self.bands.len() - 1;
        for m in (2..=bw).rev() {
            for j in 0..n.saturating_sub(m) {
                // eliminate A[j+m, j], then chase the bulge down in steps of m
                let mut col = j;
                let mut elim_row = j + m;
                let mut bulge = 0.0f64;
                let mut first = true;
                loop {
                    let p = elim_row - 1;
                    let q = elim_row;
                    let a_pc = self.get(p - col, col);
                    let a_qc = if first { self.get(m, col) } else { bulge };
                    if a_qc == 0.0 {
                        break;
                    }
                    let r = a_pc.hypot(a_qc);
                    let c = a_pc / r;
                    let s = -a_qc / r;
                    // rows p,q mix as row_p' = c·row_p − s·row_q,
                    // row_q' = s·row_p + c·row_q, zeroing A[q, col]
                    self.set(p - col, col, r);
                    if first {
                        self.set(m, col, 0.0);
                    }
                    // left wing: columns strictly between col and p
                    for cc in (col + 1)..p {
                        let dp = p - cc;
                        let dq = q - cc;
                        let apv = if dp <= m { self.get(dp, cc) } else { 0.0 };
                        let aqv = self.get(dq, cc);
                        if dp <= m {
                            self.set(dp, cc, c * apv - s * aqv);
                        }
                        self.set(dq, cc, s * apv + c * aqv);
                    }
                    // diagonal 2x2 block
                    let app = self.get(0, p);
                    let aqq = self.get(0, q);
                    let aqp = self.get(1, p);
                    self.set(0, p, c * c * app - 2.0 * c * s * aqp + s * s * aqq);
                    self.set(0, q, s * s * app + 2.0 * c * s * aqp + c * c * aqq);
                    self.set(1, p, c * s * (app - aqq) + (c * c - s * s) * aqp);
                    // right wing: rows strictly below q, within reach of p
                    let rmax = (p + m).min(n - 1);
                    for rr in (q + 1)..=rmax {
                        let dp = rr - p;
                        let dq = rr - q;
                        let apv = if dp <= m { self.get(dp, p) } else { 0.0 };
                        let aqv = self.get(dq, q);
                        if dp <= m {
                            self.set(dp, p, c * apv - s * aqv);
                        }
                        self.set(dq, q, s * apv + c * aqv);
                    }
                    // the rotation pushes one entry out of band at (q+m, p)
                    if q + m < n {
                        let aval = self.get(m, q);
                        bulge = -s * aval;
                        self.set(m, q, c * aval);
                        col = p;
                        elim_row = q + m;
                        first = false;
                        if bulge == 0.0 {
                            break;
                        }
                    } else {
                        break;
                    }
                }
            }
        }
        let d = (0..n).map(|j| self.get(0, j)).collect();
        let e = if n > 1 && !self.bands.is_empty() && self.bands.len() > 1 {
            (0..n - 1).map(|j| self.get(1, j)).collect()
        } else {
            vec![0.0; n.saturating_sub(1)]
        };
        (d, e)
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(self) -> Result<Vec<f64>> {
        let (d, e) = self.tridiagonalize();
        tridiagonal_eigenvalues(d, e)
    }
}

/// All eigenvalues of a symmetric tridiagonal matrix (diagonal `d`,
/// subdiagonal `e`), by the implicit-shift QL iteration without
/// eigenvector accumulation. Ascending order.
pub fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Ok(vec![]);
    }
    assert_eq!(e.len(), n - 1, "subdiagonal length mismatch");
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            // locate the first negligible off-diagonal at or after l
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Numerical(
                    "QL iteration did not converge within 60 sweeps".into(),
                ));
            }
            // Wilkinson shift
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Scan a dense symmetric/Hermitian pattern for its half-bandwidth.
pub fn detect_half_bandwidth_real(a: &DMatrix<f64>) -> usize {
    let n = a.nrows();
    let mut bw = 0;
    for j in 0..n {
        for i in (j + bw + 1..n).rev() {
            if a[(i, j)] != 0.0 {
                bw = i - j;
                break;
            }
        }
    }
    bw
}

pub fn detect_half_bandwidth_complex(a: &DMatrix<Complex64>) -> usize {
    let n = a.nrows();
    let mut bw = 0;
    for j in 0..n {
        for i in (j + bw + 1..n).rev() {
            if a[(i, j)] != Complex64::new(0.0, 0.0) {
                bw = i - j;
                break;
            }
        }
    }
    bw
}

/// All eigenvalues of a dense real symmetric matrix via the band path.
pub fn dense_symmetric_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    let bw = detect_half_bandwidth_real(a);
    SymmetricBand::from_dense_lower(a, bw).eigenvalues()
}

/// All eigenvalues of a dense complex Hermitian matrix via the interleaved
/// real embedding. The embedding doubles every multiplicity; sorted
/// even-index decimation restores the spectrum.
pub fn dense_hermitian_eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let bw = detect_half_bandwidth_complex(a);
    let doubled = SymmetricBand::from_dense_hermitian(a, bw).eigenvalues()?;
    Ok(doubled.into_iter().step_by(2).collect())
}
