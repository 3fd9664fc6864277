//! Theta-sweep driver: runs the turbulence channel over arm configurations,
//! computes all measures per point, emits deterministic CSV, and produces
//! Werner reference curves and the built-in verification suite.

use crate::measures::{
    self, linear_entropy, linear_entropy_generalized, mixed_three_tangle_estimate, purity,
    MeasureError, MeasureReport,
};
use crate::states::{DensityMatrix, PureState, StateError};
use crate::turbulence::{
    apply_turbulence, ArmSet, ChannelMode, TurbulenceChannel, TurbulenceError,
};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid theta range [{theta_min}, {theta_max}]; need 0 <= min <= max <= pi")]
    BadThetaRange { theta_min: f64, theta_max: f64 },
    #[error("steps must be >= {min}, got {steps}")]
    BadSteps { steps: usize, min: usize },
    #[error("arm_sets must be nonempty")]
    NoArmSets,
    #[error("unsupported qubit count {n_qubits} for a Werner curve; supported: 2, 3")]
    BadQubitCount { n_qubits: usize },
    #[error("unknown entropy variant {input:?}; expected paper or generalized")]
    BadEntropyVariant { input: String },
    #[error("unknown tangle estimator {input:?}; expected dominant or pairwise")]
    BadTangleEstimator { input: String },
    #[error(transparent)]
    Turbulence(#[from] TurbulenceError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Which linear-entropy normalization the curve output uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntropyVariant {
    /// The verbatim 4/3 prefactor for every qubit count.
    Paper,
    /// d/(d-1) prefactor; saturates at 1 for maximal mixing.
    Generalized,
}

impl FromStr for EntropyVariant {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, SweepError> {
        match s {
            "paper" => Ok(EntropyVariant::Paper),
            "generalized" => Ok(EntropyVariant::Generalized),
            _ => Err(SweepError::BadEntropyVariant {
                input: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for EntropyVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyVariant::Paper => "paper",
            EntropyVariant::Generalized => "generalized",
        })
    }
}

/// Which mixed-state tangle proxy the scalar tangle column uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TangleEstimator {
    /// Hyperdeterminant of the dominant eigenvector.
    #[serde(alias = "dominant")]
    DominantEigenvector,
    /// Largest pairwise tangle over the two-qubit reductions.
    Pairwise,
}

impl FromStr for TangleEstimator {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, SweepError> {
        match s {
            "dominant" | "dominant_eigenvector" => Ok(TangleEstimator::DominantEigenvector),
            "pairwise" => Ok(TangleEstimator::Pairwise),
            _ => Err(SweepError::BadTangleEstimator {
                input: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for TangleEstimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TangleEstimator::DominantEigenvector => "dominant_eigenvector",
            TangleEstimator::Pairwise => "pairwise",
        })
    }
}

/// Sweep parameters. Mirrors the JSON config file field for field.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub theta_min: f64,
    pub theta_max: f64,
    pub steps: usize,
    pub arm_sets: Vec<ArmSet>,
    pub mode: ChannelMode,
    pub entropy_variant: EntropyVariant,
    pub tangle_estimator: TangleEstimator,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
}

impl Default for SweepConfig {
    /// theta in [0, pi/2], 200 steps, one arm set per cardinality,
    /// stochastic mode.
    fn default() -> Self {
        Self {
            theta_min: 0.0,
            theta_max: std::f64::consts::FRAC_PI_2,
            steps: 200,
            arm_sets: vec![
                ArmSet::from_arms(&[1]).unwrap(),
                ArmSet::from_arms(&[1, 2]).unwrap(),
                ArmSet::from_arms(&[1, 2, 3]).unwrap(),
            ],
            mode: ChannelMode::Stochastic,
            entropy_variant: EntropyVariant::Paper,
            tangle_estimator: TangleEstimator::DominantEigenvector,
            output_path: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        let ok = self.theta_min.is_finite()
            && self.theta_max.is_finite()
            && self.theta_min >= 0.0
            && self.theta_min <= self.theta_max
            && self.theta_max <= std::f64::consts::PI;
        if !ok {
            return Err(SweepError::BadThetaRange {
                theta_min: self.theta_min,
                theta_max: self.theta_max,
            });
        }
        if self.steps < 1 {
            return Err(SweepError::BadSteps {
                steps: self.steps,
                min: 1,
            });
        }
        if self.arm_sets.is_empty() {
            return Err(SweepError::NoArmSets);
        }
        Ok(())
    }

    fn theta_grid(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.theta_min];
        }
        let span = self.theta_max - self.theta_min;
        (0..self.steps)
            .map(|i| self.theta_min + span * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

/// One sweep output row.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub theta: f64,
    pub arms: String,
    pub mode: String,
    pub purity: f64,
    pub linear_entropy: f64,
    pub linear_entropy_generalized: f64,
    pub tangle_ab: f64,
    pub tangle_ac: f64,
    pub tangle_bc: f64,
    pub three_tangle_estimate: f64,
    pub residual_tangle: f64,
    pub monogamy_gap: f64,
}

const CSV_HEADER: &str = "theta,arms,mode,purity,linear_entropy,linear_entropy_generalized,\
tangle_ab,tangle_ac,tangle_bc,three_tangle_estimate,residual_tangle,monogamy_gap";

fn estimate(report: &MeasureReport, estimator: TangleEstimator) -> f64 {
    match estimator {
        TangleEstimator::DominantEigenvector => report.three_tangle,
        TangleEstimator::Pairwise => report
            .tangle_ab
            .max(report.tangle_ac)
            .max(report.tangle_bc),
    }
}

/// Runs the sweep over the GHZ state: one record per (arm set, theta) pair,
/// sorted by (arms, theta) ascending. Deterministic.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>, SweepError> {
    config.validate()?;
    let ghz = PureState::ghz().to_density();
    let grid = config.theta_grid();

    let mut arm_sets = config.arm_sets.clone();
    arm_sets.sort_by_key(|a| a.canonical());

    let mut records = Vec::with_capacity(arm_sets.len() * grid.len());
    for arms in &arm_sets {
        for &theta in &grid {
            let channel = TurbulenceChannel::new(theta, *arms, config.mode)?;
            let out = apply_turbulence(&ghz, &channel)?;
            let report = measures::report_for_density(&out)?;
            records.push(SweepRecord {
                theta,
                arms: arms.canonical(),
                mode: config.mode.to_string(),
                purity: report.purity,
                linear_entropy: report.linear_entropy,
                linear_entropy_generalized: report.linear_entropy_generalized,
                tangle_ab: report.tangle_ab,
                tangle_ac: report.tangle_ac,
                tangle_bc: report.tangle_bc,
                three_tangle_estimate: estimate(&report, config.tangle_estimator),
                residual_tangle: report.residual_tangle,
                monogamy_gap: report.monogamy_gap,
            });
        }
    }
    Ok(records)
}

/// 17-significant-digit formatting; round-trips losslessly through f64 parse.
fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes sweep records as CSV with a `#` manifest line recording the tool
/// version and the full resolved config.
pub fn write_sweep_csv<W: Write>(
    writer: &mut W,
    config: &SweepConfig,
    records: &[SweepRecord],
) -> Result<(), SweepError> {
    let manifest = serde_json::to_string(config).expect("config serializes");
    writeln!(
        writer,
        "# ghz-turb v{} config={}",
        env!("CARGO_PKG_VERSION"),
        manifest
    )?;
    writeln!(writer, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            writer,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt_num(r.theta),
            r.arms,
            r.mode,
            fmt_num(r.purity),
            fmt_num(r.linear_entropy),
            fmt_num(r.linear_entropy_generalized),
            fmt_num(r.tangle_ab),
            fmt_num(r.tangle_ac),
            fmt_num(r.tangle_bc),
            fmt_num(r.three_tangle_estimate),
            fmt_num(r.residual_tangle),
            fmt_num(r.monogamy_gap),
        )?;
    }
    Ok(())
}

/// One point of a Werner reference curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerPoint {
    pub p: f64,
    pub linear_entropy: f64,
    pub tangle: f64,
}

/// Analytic Werner reference curve: p swept over [0, 1] inclusive. For N = 2
/// the tangle is the Wootters concurrence squared; for N = 3 it is the
/// selected mixed-state estimator.
pub fn werner_curve(
    n_qubits: usize,
    steps: usize,
    entropy_variant: EntropyVariant,
    tangle_estimator: TangleEstimator,
) -> Result<Vec<WernerPoint>, SweepError> {
    if !matches!(n_qubits, 2 | 3) {
        return Err(SweepError::BadQubitCount { n_qubits });
    }
    if steps < 2 {
        return Err(SweepError::BadSteps { steps, min: 2 });
    }
    let mut points = Vec::with_capacity(steps);
    for i in 0..steps {
        let p = i as f64 / (steps - 1) as f64;
        let rho = DensityMatrix::werner(p, n_qubits)?;
        let entropy = match entropy_variant {
            EntropyVariant::Paper => linear_entropy(&rho)?,
            EntropyVariant::Generalized => linear_entropy_generalized(&rho)?,
        };
        let tangle = if n_qubits == 2 {
            measures::tangle(&rho)?
        } else {
            match tangle_estimator {
                TangleEstimator::DominantEigenvector => mixed_three_tangle_estimate(&rho)?,
                TangleEstimator::Pairwise => {
                    let report = measures::report_for_density(&rho)?;
                    report.tangle_ab.max(report.tangle_ac).max(report.tangle_bc)
                }
            }
        };
        points.push(WernerPoint {
            p,
            linear_entropy: entropy,
            tangle,
        });
    }
    Ok(points)
}

/// Writes a Werner curve as CSV with a `#` manifest line.
pub fn write_werner_csv<W: Write>(
    writer: &mut W,
    n_qubits: usize,
    entropy_variant: EntropyVariant,
    tangle_estimator: TangleEstimator,
    points: &[WernerPoint],
) -> Result<(), SweepError> {
    writeln!(
        writer,
        "# ghz-turb v{} werner-curve qubits={} entropy_variant={} tangle_estimator={}",
        env!("CARGO_PKG_VERSION"),
        n_qubits,
        entropy_variant,
        tangle_estimator
    )?;
    writeln!(writer, "p,linear_entropy,tangle")?;
    for pt in points {
        writeln!(
            writer,
            "{},{},{}",
            fmt_num(pt.p),
            fmt_num(pt.linear_entropy),
            fmt_num(pt.tangle)
        )?;
    }
    Ok(())
}

/// One named invariant check with its worst observed deviation.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Outcome of the built-in verification suite.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<34} max deviation {:.3e} (tolerance {:.1e})",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.max_deviation,
                c.tolerance
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        if failed == 0 {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "{failed} of {} checks FAILED", self.checks.len())
        }
    }
}

fn check(name: &'static str, max_deviation: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name,
        max_deviation,
        tolerance,
        passed: max_deviation.is_finite() && max_deviation <= tolerance,
    }
}

/// Runs the full cross-module invariant suite: Werner closed forms, the
/// three-tangle anchors, a seeded CKW monogamy sample, channel identities,
/// purity preservation, arm symmetry, and entropy monotonicity.
pub fn verify() -> Result<VerifyReport, SweepError> {
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    let mut checks = Vec::new();

    // Wootters closed form max(0, (3p-1)/2) on a 101-point grid
    let mut dev: f64 = 0.0;
    for i in 0..=100 {
        let p = i as f64 / 100.0;
        let c = measures::concurrence(&DensityMatrix::werner(p, 2)?)?;
        let closed = ((3.0 * p - 1.0) / 2.0).max(0.0);
        dev = dev.max((c - closed).abs());
    }
    checks.push(check("wootters_closed_form", dev, 1e-10));

    // Werner purity closed form p^2 + 2p(1-p)/2^N + (1-p)^2/2^N
    let mut dev: f64 = 0.0;
    for &n in &[2usize, 3] {
        let d = (1usize << n) as f64;
        for i in 0..=100 {
            let p = i as f64 / 100.0;
            let got = purity(&DensityMatrix::werner(p, n)?)?;
            let closed = p * p + 2.0 * p * (1.0 - p) / d + (1.0 - p) * (1.0 - p) / d;
            dev = dev.max((got - closed).abs());
        }
    }
    checks.push(check("werner_purity_closed_form", dev, 1e-12));

    // three-tangle anchors
    let dev = (measures::three_tangle(&PureState::ghz())? - 1.0)
        .abs()
        .max(measures::three_tangle(&PureState::w())?.abs());
    checks.push(check("three_tangle_anchors", dev, 1e-12));

    // CKW monogamy equality on 1000 seeded Haar-random pure states
    let mut rng = ChaCha8Rng::seed_from_u64(0x434b57);
    let mut dev: f64 = 0.0;
    for _ in 0..1000 {
        let mut amps: Vec<crate::qmat::Complex> = (0..8)
            .map(|_| {
                crate::qmat::Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            })
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amps.iter_mut() {
            *a /= norm;
        }
        let psi = PureState::new(3, amps)?;
        dev = dev.max(measures::monogamy_report(&psi)?.monogamy_gap.abs());
    }
    checks.push(check("ckw_monogamy_1000_random", dev, 1e-8));

    // channel identity at theta = 0, all modes, all seven nonempty arm sets
    let ghz = PureState::ghz().to_density();
    let mut dev: f64 = 0.0;
    for mode in [
        ChannelMode::Literal,
        ChannelMode::Conjugate,
        ChannelMode::Stochastic,
    ] {
        for arms in ArmSet::all_nonempty() {
            let out = apply_turbulence(&ghz, &TurbulenceChannel::new(0.0, arms, mode)?)?;
            dev = dev.max(out.matrix().max_abs_diff(ghz.matrix()).unwrap());
        }
    }
    checks.push(check("channel_identity_theta0", dev, 1e-12));

    // conjugate mode preserves purity of 100 random pure inputs
    let mut rng = ChaCha8Rng::seed_from_u64(0x505552);
    let mut dev: f64 = 0.0;
    for _ in 0..100 {
        let mut amps: Vec<crate::qmat::Complex> = (0..8)
            .map(|_| {
                crate::qmat::Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            })
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amps.iter_mut() {
            *a /= norm;
        }
        let rho = PureState::new(3, amps)?.to_density();
        let theta = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
        let arms = ArmSet::all_nonempty()[rng.gen_range(0..7)];
        let out = apply_turbulence(&rho, &TurbulenceChannel::new(theta, arms, ChannelMode::Conjugate)?)?;
        dev = dev.max((purity(&out)? - 1.0).abs());
    }
    checks.push(check("conjugate_purity_preservation", dev, 1e-10));

    // arm symmetry on GHZ: {1}, {2}, {3} agree at 10 theta values
    let mut dev: f64 = 0.0;
    for i in 0..10 {
        let theta = (i + 1) as f64 * std::f64::consts::FRAC_PI_2 / 10.0;
        let mut reports: Vec<MeasureReport> = Vec::with_capacity(3);
        for arm in 1u8..=3 {
            let ch = TurbulenceChannel::new(
                theta,
                ArmSet::from_arms(&[arm]).unwrap(),
                ChannelMode::Stochastic,
            )?;
            let out = apply_turbulence(&ghz, &ch)?;
            reports.push(measures::report_for_density(&out)?);
        }
        for r in &reports[1..] {
            dev = dev
                .max((r.purity - reports[0].purity).abs())
                .max((r.linear_entropy - reports[0].linear_entropy).abs())
                .max((r.three_tangle - reports[0].three_tangle).abs())
                .max((r.residual_tangle - reports[0].residual_tangle).abs());
            let pairs = |r: &MeasureReport| {
                let mut t = [r.tangle_ab, r.tangle_ac, r.tangle_bc];
                t.sort_by(|a, b| a.partial_cmp(b).unwrap());
                t
            };
            let (a, b) = (pairs(r), pairs(&reports[0]));
            for k in 0..3 {
                dev = dev.max((a[k] - b[k]).abs());
            }
        }
    }
    checks.push(check("arm_symmetry_ghz", dev, 1e-10));

    // stochastic entropy monotone in theta and in arm count, 50-point grid
    let mut worst_violation: f64 = 0.0;
    let arm_sets = [
        ArmSet::from_arms(&[1]).unwrap(),
        ArmSet::from_arms(&[1, 2]).unwrap(),
        ArmSet::from_arms(&[1, 2, 3]).unwrap(),
    ];
    let mut curves = Vec::new();
    for arms in arm_sets {
        let mut curve = Vec::new();
        for i in 0..50 {
            let theta = std::f64::consts::FRAC_PI_2 * i as f64 / 49.0;
            let out = apply_turbulence(
                &ghz,
                &TurbulenceChannel::new(theta, arms, ChannelMode::Stochastic)?,
            )?;
            curve.push(linear_entropy(&out)?);
        }
        for w in curve.windows(2) {
            worst_violation = worst_violation.max(w[0] - w[1]);
        }
        curves.push(curve);
    }
    for ((one, two), three) in curves[0].iter().zip(&curves[1]).zip(&curves[2]) {
        worst_violation = worst_violation.max(one - two).max(two - three);
    }
    checks.push(check(
        "stochastic_entropy_monotone",
        worst_violation.max(0.0),
        1e-10,
    ));

    Ok(VerifyReport { checks })
}
