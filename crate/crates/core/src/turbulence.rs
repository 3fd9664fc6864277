//! The hyperbolic polarization-turbulence operator A(theta) and its
//! application to any subset of the three photon arms, under three selectable
//! semantics for the channel.

use crate::qmat::{Complex, ComplexMatrix, QmatError};
use crate::states::{DensityMatrix, StateError};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TurbulenceError {
    #[error("turbulence strength theta = {theta} outside [0, pi]")]
    ThetaOutOfRange { theta: f64 },
    #[error("arm {arm} invalid; arms are 1, 2, 3")]
    BadArm { arm: u8 },
    #[error("cannot parse arm set {input:?}; expected digits from 1, 2, 3 (e.g. \"12\")")]
    BadArmSet { input: String },
    #[error("unknown channel mode {input:?}; expected literal, conjugate, or stochastic")]
    BadMode { input: String },
    #[error("normalization trace magnitude {magnitude:e} vanishes")]
    VanishingTrace { magnitude: f64 },
    #[error("channel input must be a normalized 3-qubit state")]
    BadInput,
    #[error(transparent)]
    Matrix(#[from] QmatError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// How the non-unitary operator K is applied to the state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelMode {
    /// rho' = rho·K / Tr(rho·K): the ket-bra sums read verbatim, with
    /// right-multiplication and no dagger. Generally non-Hermitian output.
    Literal,
    /// rho' = K·rho·K† / Tr(K·rho·K†): non-trace-preserving filter,
    /// renormalized. Maps pure states to pure states.
    Conjugate,
    /// Balanced ensemble over the turbulence sign: one branch K_s·rho·K_s†
    /// per pattern of independent ±theta signs on the turbulent arms (2^k
    /// branches), summed and renormalized. The only mode that produces
    /// mixing; entropy grows with theta and with the number of arms.
    Stochastic,
}

impl fmt::Display for ChannelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChannelMode::Literal => "literal",
            ChannelMode::Conjugate => "conjugate",
            ChannelMode::Stochastic => "stochastic",
        };
        f.write_str(s)
    }
}

impl FromStr for ChannelMode {
    type Err = TurbulenceError;

    fn from_str(s: &str) -> Result<Self, TurbulenceError> {
        match s {
            "literal" => Ok(ChannelMode::Literal),
            "conjugate" => Ok(ChannelMode::Conjugate),
            "stochastic" => Ok(ChannelMode::Stochastic),
            _ => Err(TurbulenceError::BadMode {
                input: s.to_string(),
            }),
        }
    }
}

/// Subset of the photon arms {1, 2, 3}. Empty means the identity channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArmSet(u8);

impl ArmSet {
    pub const EMPTY: ArmSet = ArmSet(0);

    pub fn from_arms(arms: &[u8]) -> Result<Self, TurbulenceError> {
        let mut mask = 0u8;
        for &arm in arms {
            if !(1..=3).contains(&arm) {
                return Err(TurbulenceError::BadArm { arm });
            }
            mask |= 1 << (arm - 1);
        }
        Ok(ArmSet(mask))
    }

    /// All seven nonempty subsets, in canonical order.
    pub fn all_nonempty() -> Vec<ArmSet> {
        let mut sets: Vec<ArmSet> = (1u8..8).map(ArmSet).collect();
        sets.sort_by_key(|s| s.canonical());
        sets
    }

    pub fn contains(&self, arm: u8) -> bool {
        (1..=3).contains(&arm) && self.0 >> (arm - 1) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// Canonical string form, e.g. "12" for arms {1, 2}.
    pub fn canonical(&self) -> String {
        (1u8..=3)
            .filter(|&a| self.contains(a))
            .map(|a| char::from(b'0' + a))
            .collect()
    }
}

impl fmt::Display for ArmSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl FromStr for ArmSet {
    type Err = TurbulenceError;

    fn from_str(s: &str) -> Result<Self, TurbulenceError> {
        let mut arms = Vec::new();
        for ch in s.chars() {
            match ch {
                '1' => arms.push(1),
                '2' => arms.push(2),
                '3' => arms.push(3),
                _ => {
                    return Err(TurbulenceError::BadArmSet {
                        input: s.to_string(),
                    })
                }
            }
        }
        Self::from_arms(&arms)
    }
}

impl Serialize for ArmSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.canonical())
    }
}

impl<'de> Deserialize<'de> for ArmSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Turbulence strength, affected arms, and application semantics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurbulenceChannel {
    pub theta: f64,
    pub arms: ArmSet,
    pub mode: ChannelMode,
}

impl TurbulenceChannel {
    pub fn new(theta: f64, arms: ArmSet, mode: ChannelMode) -> Result<Self, TurbulenceError> {
        check_theta(theta)?;
        Ok(Self { theta, arms, mode })
    }
}

fn check_theta(theta: f64) -> Result<(), TurbulenceError> {
    if !theta.is_finite() || !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(TurbulenceError::ThetaOutOfRange { theta });
    }
    Ok(())
}

/// A(theta) = [[cosh, sinh], [sinh, cosh]]; symmetric, unit determinant,
/// non-unitary for theta > 0.
pub fn turbulence_operator(theta: f64) -> Result<ComplexMatrix, TurbulenceError> {
    check_theta(theta)?;
    Ok(operator_unchecked(theta))
}

fn operator_unchecked(theta: f64) -> ComplexMatrix {
    ComplexMatrix::from_real(
        2,
        2,
        &[theta.cosh(), theta.sinh(), theta.sinh(), theta.cosh()],
    )
    .expect("hyperbolic entries are finite for theta in [0, pi]")
}

fn arm_operator_signed(theta: f64, arms: ArmSet) -> ComplexMatrix {
    arm_operator_per_arm(|_| theta, arms)
}

/// Tensor factor per arm: A(theta_for(arm)) on turbulent arms, identity
/// elsewhere.
fn arm_operator_per_arm(theta_for: impl Fn(u8) -> f64, arms: ArmSet) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1);
    for arm in 1u8..=3 {
        let factor = if arms.contains(arm) {
            operator_unchecked(theta_for(arm))
        } else {
            ComplexMatrix::identity(2)
        };
        out = out.kron(&factor);
    }
    out
}

/// The 8x8 operator M1 ⊗ M2 ⊗ M3 with Mi = A(theta) on turbulent arms and
/// the identity elsewhere.
pub fn arm_operator(channel: &TurbulenceChannel) -> Result<ComplexMatrix, TurbulenceError> {
    check_theta(channel.theta)?;
    Ok(arm_operator_signed(channel.theta, channel.arms))
}

fn normalize_by_trace(m: ComplexMatrix) -> Result<ComplexMatrix, TurbulenceError> {
    let tr = m.trace()?;
    if tr.norm() < 1e-300 {
        return Err(TurbulenceError::VanishingTrace {
            magnitude: tr.norm(),
        });
    }
    Ok(m.scale(Complex::new(1.0, 0.0) / tr))
}

/// Applies the channel to a normalized 3-qubit state. Literal-mode output is
/// flagged raw (it is generally non-Hermitian); the other modes return proper
/// normalized states.
pub fn apply_turbulence(
    rho: &DensityMatrix,
    channel: &TurbulenceChannel,
) -> Result<DensityMatrix, TurbulenceError> {
    check_theta(channel.theta)?;
    if rho.n_qubits() != 3 || !rho.is_normalized() {
        return Err(TurbulenceError::BadInput);
    }
    let k = arm_operator_signed(channel.theta, channel.arms);
    match channel.mode {
        ChannelMode::Literal => {
            let product = normalize_by_trace(rho.matrix().matmul(&k)?)?;
            Ok(DensityMatrix::new_raw(3, product)?)
        }
        ChannelMode::Conjugate => {
            let out = k.matmul(rho.matrix())?.matmul(&k.dagger())?;
            finish_hermitian(out)
        }
        ChannelMode::Stochastic => {
            let arms: Vec<u8> = (1u8..=3).filter(|&a| channel.arms.contains(a)).collect();
            let mut sum = ComplexMatrix::zeros(8, 8);
            for pattern in 0..1usize << arms.len() {
                let branch = arm_operator_per_arm(
                    |arm| {
                        let pos = arms.iter().position(|&a| a == arm).unwrap();
                        if pattern >> pos & 1 == 1 {
                            -channel.theta
                        } else {
                            channel.theta
                        }
                    },
                    channel.arms,
                );
                let term = branch.matmul(rho.matrix())?.matmul(&branch.dagger())?;
                sum = sum.add(&term)?;
            }
            finish_hermitian(sum)
        }
    }
}

fn finish_hermitian(m: ComplexMatrix) -> Result<DensityMatrix, TurbulenceError> {
    let normalized = normalize_by_trace(m)?;
    // conjugation keeps Hermiticity exactly; symmetrize rounding anyway
    let herm = normalized
        .add(&normalized.dagger())?
        .scale(Complex::new(0.5, 0.0));
    Ok(DensityMatrix::new_normalized(3, herm)?)
}
