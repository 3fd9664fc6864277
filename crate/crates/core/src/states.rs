//! State constructors: computational basis kets, Bell, GHZ, W, generic
//! three-qubit pure states, and N-qubit Werner mixtures.

use crate::qmat::{Complex, ComplexMatrix, QmatError, HERMITICITY_TOL, PSD_TOL};
use thiserror::Error;

/// Norm tolerance for pure-state amplitude vectors.
pub const NORM_TOL: f64 = 1e-10;
/// Trace tolerance for normalized density matrices.
pub const TRACE_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("amplitude vector of length {len} does not match {n_qubits} qubits")]
    BadAmplitudeCount { n_qubits: usize, len: usize },
    #[error("state norm {norm} deviates from 1 beyond {tolerance:e}")]
    NotNormalized { norm: f64, tolerance: f64 },
    #[error("density matrix trace {trace} deviates from 1 beyond {tolerance:e}")]
    BadTrace { trace: f64, tolerance: f64 },
    #[error("basis index {index} out of range for {n_qubits} qubits")]
    BadBasisIndex { index: usize, n_qubits: usize },
    #[error("mixing weight p = {p} outside [0, 1]")]
    WeightOutOfRange { p: f64 },
    #[error("unsupported qubit count {n_qubits}; supported: 2, 3")]
    UnsupportedQubitCount { n_qubits: usize },
    #[error(transparent)]
    Matrix(#[from] QmatError),
}

/// Unit-norm pure state on `n_qubits` qubits. Qubit 0 is the leftmost ket
/// label, i.e. the most significant bit of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex>,
}

impl PureState {
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex>) -> Result<Self, StateError> {
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(StateError::BadAmplitudeCount {
                n_qubits,
                len: amplitudes.len(),
            });
        }
        let state = Self {
            n_qubits,
            amplitudes,
        };
        let norm = state.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(StateError::NotNormalized {
                norm,
                tolerance: NORM_TOL,
            });
        }
        Ok(state)
    }

    /// Computational basis state |index⟩.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self, StateError> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(StateError::BadBasisIndex { index, n_qubits });
        }
        let mut amps = vec![Complex::new(0.0, 0.0); dim];
        amps[index] = Complex::new(1.0, 0.0);
        Self::new(n_qubits, amps)
    }

    /// (|000⟩ + |111⟩)/√2.
    pub fn ghz() -> Self {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![Complex::new(0.0, 0.0); 8];
        amps[0] = Complex::new(a, 0.0);
        amps[7] = Complex::new(a, 0.0);
        Self::new(3, amps).unwrap()
    }

    /// Bell state Φ+ = (|00⟩ + |11⟩)/√2.
    pub fn bell() -> Self {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![Complex::new(0.0, 0.0); 4];
        amps[0] = Complex::new(a, 0.0);
        amps[3] = Complex::new(a, 0.0);
        Self::new(2, amps).unwrap()
    }

    /// (|001⟩ + |010⟩ + |100⟩)/√3.
    pub fn w() -> Self {
        let a = 1.0 / 3.0f64.sqrt();
        let mut amps = vec![Complex::new(0.0, 0.0); 8];
        amps[1] = Complex::new(a, 0.0);
        amps[2] = Complex::new(a, 0.0);
        amps[4] = Complex::new(a, 0.0);
        Self::new(3, amps).unwrap()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Rank-1 projector |ψ⟩⟨ψ|.
    pub fn to_density(&self) -> DensityMatrix {
        let dim = self.amplitudes.len();
        let mut m = ComplexMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, self.amplitudes[i] * self.amplitudes[j].conj());
            }
        }
        DensityMatrix::new_normalized(self.n_qubits, m)
            .expect("projector of a unit vector is a valid density matrix")
    }
}

/// Density matrix tagged with qubit count. `normalized` distinguishes proper
/// states (Hermitian, unit trace, PSD) from raw paper-literal channel output,
/// for which only finiteness is enforced.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
    normalized: bool,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and positivity (eigenvalues above
    /// `-PSD_TOL`).
    pub fn new_normalized(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self, StateError> {
        let dim = 1usize << n_qubits;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(StateError::Matrix(QmatError::QubitDimensionMismatch {
                dim: matrix.rows(),
                n_qubits,
            }));
        }
        let dev = matrix.hermiticity_deviation()?;
        if dev > HERMITICITY_TOL {
            return Err(StateError::Matrix(QmatError::NotHermitian {
                deviation: dev,
                tolerance: HERMITICITY_TOL,
            }));
        }
        let tr = matrix.trace()?;
        if (tr - Complex::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(StateError::BadTrace {
                trace: tr.re,
                tolerance: TRACE_TOL,
            });
        }
        if let Some(&min) = matrix
            .hermitian_eigenvalues()?
            .first()
        {
            if min < -PSD_TOL {
                return Err(StateError::Matrix(QmatError::NotPositiveSemidefinite {
                    eigenvalue: min,
                    tolerance: PSD_TOL,
                }));
            }
        }
        Ok(Self {
            n_qubits,
            matrix,
            normalized: true,
        })
    }

    /// Raw wrapper for channel output that need not be Hermitian; only
    /// finiteness (enforced by `ComplexMatrix`) and dimensions are checked.
    pub fn new_raw(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self, StateError> {
        let dim = 1usize << n_qubits;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(StateError::Matrix(QmatError::QubitDimensionMismatch {
                dim: matrix.rows(),
                n_qubits,
            }));
        }
        Ok(Self {
            n_qubits,
            matrix,
            normalized: false,
        })
    }

    /// Werner mixture p|φ_ME⟩⟨φ_ME| + (1-p)/2^N · 1. The maximally entangled
    /// reference is Bell Φ+ for N = 2 and GHZ for N = 3.
    pub fn werner(p: f64, n_qubits: usize) -> Result<Self, StateError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(StateError::WeightOutOfRange { p });
        }
        let me = match n_qubits {
            2 => PureState::bell(),
            3 => PureState::ghz(),
            _ => return Err(StateError::UnsupportedQubitCount { n_qubits }),
        };
        let dim = 1usize << n_qubits;
        let proj = me.to_density();
        let white = ComplexMatrix::identity(dim)
            .scale(Complex::new((1.0 - p) / dim as f64, 0.0));
        let mixed = proj
            .matrix
            .scale(Complex::new(p, 0.0))
            .add(&white)?;
        Self::new_normalized(n_qubits, mixed)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }
}
