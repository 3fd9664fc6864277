//! Dense complex-matrix kernel: construction, algebra, tensor products,
//! partial trace, and Hermitian eigensolvers sized for matrices up to 8x8.

use num_complex::Complex64;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type Complex = Complex64;

/// Hermiticity tolerance: max absolute deviation of `a - a†`.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Eigenvalues above `-PSD_TOL` are treated as nonnegative and clamped to zero.
pub const PSD_TOL: f64 = 1e-10;

/// Eigenvalues below this floor are numerical zeros. Clamping them to exact
/// zero before taking square roots avoids the sqrt amplification of rounding
/// noise (sqrt(1e-16) ~ 1e-8) in rank-deficient spectra.
pub const SPECTRAL_FLOOR: f64 = 1e-13;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_OFFDIAG_TOL: f64 = 1e-15;

#[derive(Debug, Error)]
pub enum QmatError {
    #[error("dimension mismatch: left matrix is {left_rows}x{left_cols}, right matrix is {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry length {len} does not match {rows}x{cols}")]
    BadEntryCount { rows: usize, cols: usize, len: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian: deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e} below -{tolerance:e}")]
    NotPositiveSemidefinite { eigenvalue: f64, tolerance: f64 },
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitIndexOutOfRange { index: usize, n_qubits: usize },
    #[error("keep set is empty or contains duplicates")]
    BadKeepSet,
    #[error("matrix dimension {dim} does not match {n_qubits} qubits")]
    QubitDimensionMismatch { dim: usize, n_qubits: usize },
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self, QmatError> {
        if data.len() != rows * cols {
            return Err(QmatError::BadEntryCount {
                rows,
                cols,
                len: data.len(),
            });
        }
        for (i, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(QmatError::NonFinite {
                    row: i / cols,
                    col: i % cols,
                });
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self, QmatError> {
        Self::new(
            rows,
            cols,
            data.iter().map(|&x| Complex::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex) {
        self.data[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix, QmatError> {
        if self.cols != other.rows {
            return Err(QmatError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conjugate(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Kronecker product; entry ((i*b.rows+k),(j*b.cols+l)) = a[i,j]*b[k,l].
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Result<Complex, QmatError> {
        if !self.is_square() {
            return Err(QmatError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix, QmatError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(QmatError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, factor: Complex) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Max absolute entry of `self - other`; matrices must share dimensions.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64, QmatError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(QmatError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Max absolute deviation from Hermiticity, `max |a - a†|`.
    pub fn hermiticity_deviation(&self) -> Result<f64, QmatError> {
        if !self.is_square() {
            return Err(QmatError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        Ok(dev)
    }

    /// Traces out the qubits not listed in `keep`. Qubit 0 is the leftmost
    /// tensor factor (most significant bit of the basis index); the reduced
    /// state inherits its qubit ordering from `keep` order.
    pub fn partial_trace(
        &self,
        n_qubits: usize,
        keep: &[usize],
    ) -> Result<ComplexMatrix, QmatError> {
        let dim = 1usize << n_qubits;
        if !self.is_square() {
            return Err(QmatError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows != dim {
            return Err(QmatError::QubitDimensionMismatch {
                dim: self.rows,
                n_qubits,
            });
        }
        if keep.is_empty() {
            return Err(QmatError::BadKeepSet);
        }
        for (i, &q) in keep.iter().enumerate() {
            if q >= n_qubits {
                return Err(QmatError::QubitIndexOutOfRange {
                    index: q,
                    n_qubits,
                });
            }
            if keep[..i].contains(&q) {
                return Err(QmatError::BadKeepSet);
            }
        }
        let traced: Vec<usize> = (0..n_qubits).filter(|q| !keep.contains(q)).collect();
        let k = keep.len();
        let nt = traced.len();
        let out_dim = 1usize << k;
        let tr_dim = 1usize << nt;

        // Full basis index from a kept index and a traced index; bit for
        // qubit q sits at position n_qubits-1-q.
        let compose = |kept: usize, tr: usize| -> usize {
            let mut idx = 0usize;
            for (j, &q) in keep.iter().enumerate() {
                let bit = (kept >> (k - 1 - j)) & 1;
                idx |= bit << (n_qubits - 1 - q);
            }
            for (m, &q) in traced.iter().enumerate() {
                let bit = (tr >> (nt - 1 - m)) & 1;
                idx |= bit << (n_qubits - 1 - q);
            }
            idx
        };

        let mut out = ComplexMatrix::zeros(out_dim, out_dim);
        for r in 0..out_dim {
            for c in 0..out_dim {
                let mut sum = Complex::new(0.0, 0.0);
                for t in 0..tr_dim {
                    sum += self.get(compose(r, t), compose(c, t));
                }
                out.set(r, c, sum);
            }
        }
        Ok(out)
    }

    /// All eigenvalues of a Hermitian matrix, ascending, with multiplicity.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>, QmatError> {
        Ok(self.hermitian_eigen()?.0)
    }

    /// Real symmetric embedding [[X, -Y], [Y, X]] of X + iY; its spectrum is
    /// the complex spectrum with every eigenvalue doubled, and a real
    /// eigenvector (u; v) maps back to the complex eigenvector u + iv.
    /// Returns unsorted eigenvalues and the eigenvector matrix (columns).
    fn embedded_eigen(&self) -> Result<(Vec<f64>, Vec<f64>), QmatError> {
        let dev = self.hermiticity_deviation()?;
        if dev > HERMITICITY_TOL {
            return Err(QmatError::NotHermitian {
                deviation: dev,
                tolerance: HERMITICITY_TOL,
            });
        }
        let n = self.rows;
        let m = 2 * n;
        let mut s = vec![0.0f64; m * m];
        for i in 0..n {
            for j in 0..n {
                let z = self.get(i, j);
                s[i * m + j] = z.re;
                s[(n + i) * m + (n + j)] = z.re;
                s[i * m + (n + j)] = -z.im;
                s[(n + i) * m + j] = z.im;
            }
        }
        Ok(jacobi_symmetric(m, s))
    }

    /// Eigenvalues (ascending) and matching unit eigenvectors of a Hermitian
    /// matrix. The ordering is deterministic: eigenpairs are stably sorted by
    /// eigenvalue. Each vector is a genuine unit eigenvector, but within a
    /// degenerate eigenspace the returned vectors are not guaranteed mutually
    /// orthogonal; spectral reconstruction goes through `hermitian_apply`.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, Vec<Vec<Complex>>), QmatError> {
        let n = self.rows;
        let m = 2 * n;
        let (vals, vecs) = self.embedded_eigen()?;

        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap());

        let mut eigenvalues = Vec::with_capacity(n);
        let mut eigenvectors = Vec::with_capacity(n);
        for p in 0..n {
            let ia = order[2 * p];
            let ib = order[2 * p + 1];
            eigenvalues.push(0.5 * (vals[ia] + vals[ib]));
            let mut z: Vec<Complex> = (0..n)
                .map(|row| Complex::new(vecs[row * m + ia], vecs[(n + row) * m + ia]))
                .collect();
            let norm: f64 = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for c in z.iter_mut() {
                *c /= norm;
            }
            eigenvectors.push(z);
        }
        Ok((eigenvalues, eigenvectors))
    }

    /// Applies a real function to the spectrum of a Hermitian matrix:
    /// returns sum f(lambda_k) P_k over the spectral projectors. The
    /// reconstruction runs in the real embedding over all 2n eigenpairs, so
    /// degenerate eigenspaces are handled exactly.
    pub fn hermitian_apply(&self, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix, QmatError> {
        let n = self.rows;
        let m = 2 * n;
        let (vals, vecs) = self.embedded_eigen()?;
        let mut r = vec![0.0f64; m * m];
        for (k, &lambda) in vals.iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..m {
                let qi = vecs[i * m + k];
                if qi == 0.0 {
                    continue;
                }
                for j in 0..m {
                    r[i * m + j] += w * qi * vecs[j * m + k];
                }
            }
        }
        // extract the complex matrix whose embedding is the reconstruction
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let re = 0.5 * (r[i * m + j] + r[(n + i) * m + (n + j)]);
                let im = 0.5 * (r[(n + i) * m + j] - r[i * m + (n + j)]);
                out.set(i, j, Complex::new(re, im));
            }
        }
        let herm = out.add(&out.dagger()).unwrap().scale(Complex::new(0.5, 0.0));
        Ok(herm)
    }

    /// Hermitian PSD square root: the unique PSD `s` with `s*s == self`.
    /// Eigenvalues in `[-PSD_TOL, SPECTRAL_FLOOR)` are clamped to zero.
    pub fn hermitian_sqrt(&self) -> Result<ComplexMatrix, QmatError> {
        let vals = self.hermitian_eigenvalues()?;
        if let Some(&min) = vals.first() {
            if min < -PSD_TOL {
                return Err(QmatError::NotPositiveSemidefinite {
                    eigenvalue: min,
                    tolerance: PSD_TOL,
                });
            }
        }
        self.hermitian_apply(|l| if l < SPECTRAL_FLOOR { 0.0 } else { l.sqrt() })
    }
}

/// Pauli sigma_y.
pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex::new(0.0, 0.0),
            Complex::new(0.0, -1.0),
            Complex::new(0.0, 1.0),
            Complex::new(0.0, 0.0),
        ],
    )
    .unwrap()
}

/// Cyclic Jacobi eigensolver for a real symmetric matrix given row-major.
/// Returns unsorted eigenvalues and the eigenvector matrix (columns).
fn jacobi_symmetric(n: usize, mut a: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0f64; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += a[p * n + q] * a[p * n + q];
                }
            }
            s.sqrt()
        };
        if off < JACOBI_OFFDIAG_TOL {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < JACOBI_OFFDIAG_TOL * 1e-3 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // rotate rows/columns p and q
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let vals = (0..n).map(|i| a[i * n + i]).collect();
    (vals, v)
}
