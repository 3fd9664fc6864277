//! Entanglement diagnostics: purity, linear entropy, Wootters concurrence
//! and tangle, the three-tangle hyperdeterminant, and the CKW monogamy
//! decomposition.

use crate::qmat::{sigma_y, Complex, ComplexMatrix, QmatError};
use crate::states::{DensityMatrix, PureState, StateError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("trace magnitude {magnitude:e} too small to normalize by")]
    VanishingTrace { magnitude: f64 },
    #[error("Tr rho^2 has imaginary part {imaginary:e} beyond 1e-10")]
    NonRealPurity { imaginary: f64 },
    #[error("expected a {expected}-qubit state, got {got} qubits")]
    WrongQubitCount { expected: usize, got: usize },
    #[error("operation requires a normalized density matrix")]
    UnnormalizedInput,
    #[error(transparent)]
    Matrix(#[from] QmatError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// All diagnostics for one three-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub purity: f64,
    pub linear_entropy: f64,
    pub linear_entropy_generalized: f64,
    pub tangle_ab: f64,
    pub tangle_ac: f64,
    pub tangle_bc: f64,
    pub three_tangle: f64,
    pub residual_tangle: f64,
    pub monogamy_gap: f64,
}

fn unit_trace_matrix(rho: &DensityMatrix) -> Result<ComplexMatrix, MeasureError> {
    if rho.is_normalized() {
        return Ok(rho.matrix().clone());
    }
    let tr = rho.matrix().trace()?;
    if tr.norm() < 1e-300 {
        return Err(MeasureError::VanishingTrace {
            magnitude: tr.norm(),
        });
    }
    Ok(rho.matrix().scale(Complex::new(1.0, 0.0) / tr))
}

/// Tr rho^2; raw inputs are first normalized by their trace.
pub fn purity(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    let m = unit_trace_matrix(rho)?;
    let n = m.rows();
    let mut sum = Complex::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            sum += m.get(i, j) * m.get(j, i);
        }
    }
    if sum.im.abs() > 1e-10 {
        return Err(MeasureError::NonRealPurity { imaginary: sum.im });
    }
    Ok(sum.re)
}

/// S_L = (4/3)(1 - Tr rho^2), with the 4/3 prefactor kept for every qubit
/// count. Exceeds 1 for the three-qubit maximally mixed state.
pub fn linear_entropy(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    Ok((4.0 / 3.0) * (1.0 - purity(rho)?))
}

/// Dimension-corrected companion, d/(d-1)·(1 - Tr rho^2); saturates at 1 for
/// the maximally mixed state of any dimension.
pub fn linear_entropy_generalized(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    let d = rho.matrix().rows() as f64;
    Ok(d / (d - 1.0) * (1.0 - purity(rho)?))
}

/// Wootters concurrence of a two-qubit state: max{l1-l2-l3-l4, 0} over the
/// descending square roots of the spectrum of rho·rho~. The spectrum is taken
/// from the Hermitian matrix sqrt(rho)·rho~·sqrt(rho), which shares it.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    if rho.n_qubits() != 2 {
        return Err(MeasureError::WrongQubitCount {
            expected: 2,
            got: rho.n_qubits(),
        });
    }
    if !rho.is_normalized() {
        return Err(MeasureError::UnnormalizedInput);
    }
    let m = rho.matrix();
    let yy = sigma_y().kron(&sigma_y());
    // spin flip: rho~ = (sy ⊗ sy) rho* (sy ⊗ sy), conjugation in the
    // computational basis
    let flipped = yy.matmul(&m.conjugate())?.matmul(&yy)?;
    let root = m.hermitian_sqrt()?;
    let product = root.matmul(&flipped)?.matmul(&root)?;
    // exact-arithmetic Hermitian; symmetrize away rounding
    let herm = product
        .add(&product.dagger())?
        .scale(Complex::new(0.5, 0.0));
    // clamp numerical zeros before the square root so rank-deficient inputs
    // (every pure-state reduction) do not pick up sqrt-amplified noise
    let mut lambdas: Vec<f64> = herm
        .hermitian_eigenvalues()?
        .iter()
        .map(|&v| {
            if v < crate::qmat::SPECTRAL_FLOOR {
                0.0
            } else {
                v.sqrt()
            }
        })
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Concurrence squared.
pub fn tangle(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    let c = concurrence(rho)?;
    Ok(c * c)
}

/// Three-tangle 4|d1 - 2 d2 + 4 d3| over the amplitudes of a three-qubit
/// pure state. Squares and products are complex; the modulus is taken last.
pub fn three_tangle(psi: &PureState) -> Result<f64, MeasureError> {
    if psi.n_qubits() != 3 {
        return Err(MeasureError::WrongQubitCount {
            expected: 3,
            got: psi.n_qubits(),
        });
    }
    let a = psi.amplitudes();
    // a[i] indexed by the bit pattern ijk, qubit A most significant
    let d1 = a[0b000] * a[0b000] * a[0b111] * a[0b111]
        + a[0b001] * a[0b001] * a[0b110] * a[0b110]
        + a[0b010] * a[0b010] * a[0b101] * a[0b101]
        + a[0b100] * a[0b100] * a[0b011] * a[0b011];
    let d2 = a[0b000] * a[0b111] * a[0b011] * a[0b100]
        + a[0b000] * a[0b111] * a[0b101] * a[0b010]
        + a[0b000] * a[0b111] * a[0b110] * a[0b001]
        + a[0b011] * a[0b100] * a[0b101] * a[0b010]
        + a[0b011] * a[0b100] * a[0b110] * a[0b001]
        + a[0b101] * a[0b010] * a[0b110] * a[0b001];
    let d3 = a[0b000] * a[0b110] * a[0b101] * a[0b011]
        + a[0b111] * a[0b001] * a[0b010] * a[0b100];
    Ok(4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm())
}

/// Bipartite tangle of `pivot` against the rest: 4 det of the single-qubit
/// reduced state. For pure states this makes the CKW decomposition an
/// equality.
pub fn residual_tangle(psi: &PureState, pivot: usize) -> Result<f64, MeasureError> {
    if psi.n_qubits() != 3 {
        return Err(MeasureError::WrongQubitCount {
            expected: 3,
            got: psi.n_qubits(),
        });
    }
    let rho = psi.to_density();
    residual_tangle_of_density(&rho, pivot)
}

fn residual_tangle_of_density(rho: &DensityMatrix, pivot: usize) -> Result<f64, MeasureError> {
    let reduced = rho.matrix().partial_trace(rho.n_qubits(), &[pivot])?;
    let det = reduced.get(0, 0) * reduced.get(1, 1) - reduced.get(0, 1) * reduced.get(1, 0);
    Ok(4.0 * det.re)
}

fn pair_tangle(rho: &DensityMatrix, keep: [usize; 2]) -> Result<f64, MeasureError> {
    let reduced = rho.matrix().partial_trace(rho.n_qubits(), &keep)?;
    let pair = DensityMatrix::new_normalized(2, reduced)?;
    tangle(&pair)
}

/// Full CKW report for a three-qubit pure state, pivot A:
/// tau_A(BC) = tau_AB + tau_AC + tau_ABC.
pub fn monogamy_report(psi: &PureState) -> Result<MeasureReport, MeasureError> {
    if psi.n_qubits() != 3 {
        return Err(MeasureError::WrongQubitCount {
            expected: 3,
            got: psi.n_qubits(),
        });
    }
    let rho = psi.to_density();
    let purity = purity(&rho)?;
    let tangle_ab = pair_tangle(&rho, [0, 1])?;
    let tangle_ac = pair_tangle(&rho, [0, 2])?;
    let tangle_bc = pair_tangle(&rho, [1, 2])?;
    let three_tangle = three_tangle(psi)?;
    let residual_tangle = residual_tangle_of_density(&rho, 0)?;
    Ok(MeasureReport {
        purity,
        linear_entropy: (4.0 / 3.0) * (1.0 - purity),
        linear_entropy_generalized: (8.0 / 7.0) * (1.0 - purity),
        tangle_ab,
        tangle_ac,
        tangle_bc,
        three_tangle,
        residual_tangle,
        monogamy_gap: residual_tangle - (tangle_ab + tangle_ac + three_tangle),
    })
}

/// Three-tangle proxy for mixed states: the hyperdeterminant evaluated on the
/// eigenvector of the largest eigenvalue (ties broken by the deterministic
/// eigensolver ordering).
pub fn mixed_three_tangle_estimate(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    if rho.n_qubits() != 3 {
        return Err(MeasureError::WrongQubitCount {
            expected: 3,
            got: rho.n_qubits(),
        });
    }
    if !rho.is_normalized() {
        return Err(MeasureError::UnnormalizedInput);
    }
    let (_, vecs) = rho.matrix().hermitian_eigen()?;
    let dominant = vecs.last().expect("8x8 spectrum is nonempty");
    let norm: f64 = dominant.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let amps: Vec<Complex> = dominant.iter().map(|c| c / norm).collect();
    three_tangle(&PureState::new(3, amps)?)
}

/// Closest proper state to a raw matrix: trace-normalize, take the Hermitian
/// part, clamp negative eigenvalues to zero, renormalize.
pub fn project_to_state(rho: &DensityMatrix) -> Result<DensityMatrix, MeasureError> {
    let m = unit_trace_matrix(rho)?;
    let herm = m.add(&m.dagger())?.scale(Complex::new(0.5, 0.0));
    let total: f64 = herm
        .hermitian_eigenvalues()?
        .iter()
        .map(|v| v.max(0.0))
        .sum();
    if total < 1e-300 {
        return Err(MeasureError::VanishingTrace { magnitude: total });
    }
    let clamped = herm.hermitian_apply(|l| l.max(0.0) / total)?;
    Ok(DensityMatrix::new_normalized(rho.n_qubits(), clamped)?)
}

/// Full report for a three-qubit density matrix. Purity and the entropies are
/// taken on the input as-is; the eigenvalue-based tangles of a raw
/// (non-Hermitian, paper-literal) input are taken on its projection to the
/// closest proper state.
pub fn report_for_density(rho: &DensityMatrix) -> Result<MeasureReport, MeasureError> {
    if rho.n_qubits() != 3 {
        return Err(MeasureError::WrongQubitCount {
            expected: 3,
            got: rho.n_qubits(),
        });
    }
    let purity = purity(rho)?;
    let state;
    let proper = if rho.is_normalized() {
        rho
    } else {
        state = project_to_state(rho)?;
        &state
    };
    let tangle_ab = pair_tangle(proper, [0, 1])?;
    let tangle_ac = pair_tangle(proper, [0, 2])?;
    let tangle_bc = pair_tangle(proper, [1, 2])?;
    let three_tangle = mixed_three_tangle_estimate(proper)?;
    let residual_tangle = residual_tangle_of_density(proper, 0)?;
    Ok(MeasureReport {
        purity,
        linear_entropy: (4.0 / 3.0) * (1.0 - purity),
        linear_entropy_generalized: 8.0 / 7.0 * (1.0 - purity),
        tangle_ab,
        tangle_ac,
        tangle_bc,
        three_tangle,
        residual_tangle,
        monogamy_gap: residual_tangle - (tangle_ab + tangle_ac + three_tangle),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn haar_random_3q(rng: &mut impl Rng) -> PureState {
        use rand_distr::StandardNormal;
        let mut amps: Vec<Complex> = (0..8)
            .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amps.iter_mut() {
            *a /= norm;
        }
        PureState::new(3, amps).unwrap()
    }

    #[test]
    fn purity_anchors() {
        assert!((purity(&PureState::ghz().to_density()).unwrap() - 1.0).abs() < 1e-12);
        assert!((purity(&DensityMatrix::werner(0.0, 3).unwrap()).unwrap() - 0.125).abs() < 1e-12);
        assert!(
            (purity(&DensityMatrix::werner(0.5, 3).unwrap()).unwrap() - 0.34375).abs() < 1e-12
        );
    }

    #[test]
    fn linear_entropy_anchors() {
        assert!(linear_entropy(&PureState::bell().to_density()).unwrap().abs() < 1e-12);
        assert!(
            (linear_entropy(&DensityMatrix::werner(0.0, 2).unwrap()).unwrap() - 1.0).abs() < 1e-12
        );
        // the paper's 4/3 prefactor overshoots 1 for the 3-qubit white noise
        assert!(
            (linear_entropy(&DensityMatrix::werner(0.0, 3).unwrap()).unwrap() - 7.0 / 6.0).abs()
                < 1e-12
        );
    }

    #[test]
    fn generalized_entropy_anchors() {
        assert!(
            (linear_entropy_generalized(&DensityMatrix::werner(0.0, 3).unwrap()).unwrap() - 1.0)
                .abs()
                < 1e-12
        );
        assert!(linear_entropy_generalized(&PureState::ghz().to_density())
            .unwrap()
            .abs()
            < 1e-12);
        assert!(
            (linear_entropy_generalized(&DensityMatrix::werner(0.5, 2).unwrap()).unwrap() - 0.75)
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn concurrence_anchors() {
        assert!((concurrence(&PureState::bell().to_density()).unwrap() - 1.0).abs() < 1e-10);
        let product = PureState::basis(2, 0).unwrap().to_density();
        assert!(concurrence(&product).unwrap().abs() < 1e-10);
        assert!((concurrence(&DensityMatrix::werner(0.8, 2).unwrap()).unwrap() - 0.7).abs() < 1e-10);
    }

    #[test]
    fn tangle_anchors() {
        assert!((tangle(&PureState::bell().to_density()).unwrap() - 1.0).abs() < 1e-10);
        assert!((tangle(&DensityMatrix::werner(0.8, 2).unwrap()).unwrap() - 0.49).abs() < 1e-10);
        assert!(tangle(&DensityMatrix::werner(1.0 / 3.0, 2).unwrap()).unwrap() < 1e-10);
    }

    #[test]
    fn concurrence_rejects_three_qubits() {
        let err = concurrence(&PureState::ghz().to_density()).unwrap_err();
        assert!(matches!(err, MeasureError::WrongQubitCount { .. }));
    }

    #[test]
    fn three_tangle_anchors() {
        assert!((three_tangle(&PureState::ghz()).unwrap() - 1.0).abs() < 1e-12);
        assert!(three_tangle(&PureState::w()).unwrap().abs() < 1e-12);
        assert!(three_tangle(&PureState::basis(3, 0).unwrap()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn residual_tangle_anchors() {
        assert!((residual_tangle(&PureState::ghz(), 0).unwrap() - 1.0).abs() < 1e-12);
        assert!(residual_tangle(&PureState::basis(3, 0).unwrap(), 0).unwrap().abs() < 1e-12);
        assert!((residual_tangle(&PureState::w(), 0).unwrap() - 8.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn monogamy_ghz_and_product() {
        let r = monogamy_report(&PureState::ghz()).unwrap();
        assert!(r.monogamy_gap.abs() < 1e-10);
        assert!((r.three_tangle - 1.0).abs() < 1e-10);
        assert!(r.tangle_ab.abs() < 1e-10);

        let r = monogamy_report(&PureState::basis(3, 0).unwrap()).unwrap();
        for v in [
            r.tangle_ab,
            r.tangle_ac,
            r.tangle_bc,
            r.three_tangle,
            r.residual_tangle,
            r.monogamy_gap,
            r.linear_entropy,
        ] {
            assert!(v.abs() < 1e-10);
        }
    }

    #[test]
    fn monogamy_w_state() {
        let r = monogamy_report(&PureState::w()).unwrap();
        assert!((r.tangle_ab - 4.0 / 9.0).abs() < 1e-8);
        assert!((r.tangle_ac - 4.0 / 9.0).abs() < 1e-8);
        assert!(r.three_tangle.abs() < 1e-10);
        assert!(r.monogamy_gap.abs() < 1e-8);
    }

    #[test]
    fn monogamy_random_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let psi = haar_random_3q(&mut rng);
            let r = monogamy_report(&psi).unwrap();
            assert!(r.monogamy_gap.abs() < 1e-8);
        }
    }

    #[test]
    fn three_tangle_local_phase_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let psi = haar_random_3q(&mut rng);
            let base = three_tangle(&psi).unwrap();
            for qubit in 0..3 {
                let phase = Complex::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
                let amps: Vec<Complex> = psi
                    .amplitudes()
                    .iter()
                    .enumerate()
                    .map(|(i, a)| {
                        if (i >> (2 - qubit)) & 1 == 1 {
                            a * phase
                        } else {
                            *a
                        }
                    })
                    .collect();
                let rotated = PureState::new(3, amps).unwrap();
                assert!((three_tangle(&rotated).unwrap() - base).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn concurrence_swap_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let psi = haar_random_3q(&mut rng);
            let rho = psi.to_density();
            let ab = rho.matrix().partial_trace(3, &[0, 1]).unwrap();
            let ba = rho.matrix().partial_trace(3, &[1, 0]).unwrap();
            let c_ab = concurrence(&DensityMatrix::new_normalized(2, ab).unwrap()).unwrap();
            let c_ba = concurrence(&DensityMatrix::new_normalized(2, ba).unwrap()).unwrap();
            assert!((c_ab - c_ba).abs() < 1e-10);
        }
    }

    #[test]
    fn dominant_eigenvector_estimate() {
        assert!(
            (mixed_three_tangle_estimate(&PureState::ghz().to_density()).unwrap() - 1.0).abs()
                < 1e-10
        );
        assert!(mixed_three_tangle_estimate(&PureState::w().to_density())
            .unwrap()
            .abs()
            < 1e-10);
        assert!(
            (mixed_three_tangle_estimate(&DensityMatrix::werner(0.9, 3).unwrap()).unwrap() - 1.0)
                .abs()
                < 1e-10
        );
    }
}
