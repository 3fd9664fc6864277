//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see every line.

use ghz_turb::qmat::Complex;
use ghz_turb::states::{DensityMatrix, PureState};
use ghz_turb::sweep::{run_sweep, write_sweep_csv, SweepConfig};
use ghz_turb::turbulence::{apply_turbulence, ArmSet, ChannelMode, TurbulenceChannel};
use ghz_turb::{
    concurrence, linear_entropy, monogamy_report, purity, three_tangle, MeasureReport,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::time::Instant;

fn report(criterion: &str, passed: bool, detail: String) {
    println!(
        "{} {criterion}: {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "{criterion}: {detail}");
}

fn haar_random_3q(rng: &mut impl Rng) -> PureState {
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
fn criterion_01_werner_concurrence_closed_form() {
    let start = Instant::now();
    let mut dev: f64 = 0.0;
    for i in 0..=100 {
        let p = i as f64 / 100.0;
        let got = concurrence(&DensityMatrix::werner(p, 2).unwrap()).unwrap();
        let closed = ((3.0 * p - 1.0) / 2.0).max(0.0);
        dev = dev.max((got - closed).abs());
    }
    let elapsed = start.elapsed();
    report(
        "criterion 1 (Werner concurrence closed form)",
        dev < 1e-10 && elapsed.as_secs_f64() < 1.0,
        format!("max deviation {dev:.3e} (tol 1e-10), runtime {elapsed:?} (< 1 s)"),
    );
}

#[test]
fn criterion_02_werner_purity_closed_form() {
    let start = Instant::now();
    let mut dev: f64 = 0.0;
    for &n in &[2usize, 3] {
        let d = (1usize << n) as f64;
        for i in 0..=100 {
            let p = i as f64 / 100.0;
            let got = purity(&DensityMatrix::werner(p, n).unwrap()).unwrap();
            let closed = p * p + 2.0 * p * (1.0 - p) / d + (1.0 - p) * (1.0 - p) / d;
            dev = dev.max((got - closed).abs());
        }
    }
    let elapsed = start.elapsed();
    report(
        "criterion 2 (Werner purity closed form)",
        dev < 1e-12 && elapsed.as_secs_f64() < 1.0,
        format!("max deviation {dev:.3e} (tol 1e-12), runtime {elapsed:?} (< 1 s)"),
    );
}

#[test]
fn criterion_03_three_tangle_anchors() {
    let ghz = (three_tangle(&PureState::ghz()).unwrap() - 1.0).abs();
    let w = three_tangle(&PureState::w()).unwrap().abs();
    report(
        "criterion 3 (three-tangle anchors)",
        ghz < 1e-12 && w < 1e-12,
        format!("|GHZ - 1| = {ghz:.3e}, |W| = {w:.3e} (tol 1e-12)"),
    );
}

#[test]
fn criterion_04_ckw_monogamy_equality() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC4);
    let mut dev: f64 = 0.0;
    for _ in 0..1000 {
        let psi = haar_random_3q(&mut rng);
        dev = dev.max(monogamy_report(&psi).unwrap().monogamy_gap.abs());
    }
    let elapsed = start.elapsed();
    report(
        "criterion 4 (CKW monogamy, 1000 Haar states)",
        dev < 1e-8 && elapsed.as_secs_f64() < 30.0,
        format!("max |gap| {dev:.3e} (tol 1e-8), runtime {elapsed:?} (< 30 s)"),
    );
}

#[test]
fn criterion_05_channel_identity_at_zero() {
    let ghz = PureState::ghz().to_density();
    let mut dev: f64 = 0.0;
    for mode in [
        ChannelMode::Literal,
        ChannelMode::Conjugate,
        ChannelMode::Stochastic,
    ] {
        for arms in ArmSet::all_nonempty() {
            let out =
                apply_turbulence(&ghz, &TurbulenceChannel::new(0.0, arms, mode).unwrap()).unwrap();
            dev = dev.max(out.matrix().max_abs_diff(ghz.matrix()).unwrap());
        }
    }
    report(
        "criterion 5 (channel identity at theta=0)",
        dev < 1e-12,
        format!("max deviation {dev:.3e} over 3 modes x 7 arm sets (tol 1e-12)"),
    );
}

#[test]
fn criterion_06_conjugate_purity_preservation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC6);
    let mut dev: f64 = 0.0;
    for _ in 0..100 {
        let rho = haar_random_3q(&mut rng).to_density();
        let theta = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
        let arms = ArmSet::all_nonempty()[rng.gen_range(0..7)];
        let out = apply_turbulence(
            &rho,
            &TurbulenceChannel::new(theta, arms, ChannelMode::Conjugate).unwrap(),
        )
        .unwrap();
        dev = dev.max((purity(&out).unwrap() - 1.0).abs());
    }
    report(
        "criterion 6 (conjugate mode preserves purity)",
        dev < 1e-10,
        format!("max |purity - 1| {dev:.3e} over 100 random pure inputs (tol 1e-10)"),
    );
}

#[test]
fn criterion_07_stochastic_entropy_monotone_and_ordered() {
    let ghz = PureState::ghz().to_density();
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
                &TurbulenceChannel::new(theta, arms, ChannelMode::Stochastic).unwrap(),
            )
            .unwrap();
            curve.push(linear_entropy(&out).unwrap());
        }
        curves.push(curve);
    }
    let mut worst_decrease: f64 = 0.0;
    for curve in &curves {
        for w in curve.windows(2) {
            worst_decrease = worst_decrease.max(w[0] - w[1]);
        }
    }
    let mut worst_disorder: f64 = 0.0;
    for ((one, two), three) in curves[0].iter().zip(&curves[1]).zip(&curves[2]) {
        worst_disorder = worst_disorder.max(one - two).max(two - three);
    }
    report(
        "criterion 7 (stochastic entropy monotone, arm-count ordered)",
        worst_decrease <= 1e-10 && worst_disorder <= 1e-10,
        format!(
            "worst decrease {worst_decrease:.3e}, worst ordering violation {worst_disorder:.3e} (tol 1e-10)"
        ),
    );
}

#[test]
fn criterion_08_arm_symmetry() {
    let ghz = PureState::ghz().to_density();
    let mut dev: f64 = 0.0;
    for i in 0..10 {
        let theta = (i + 1) as f64 * std::f64::consts::FRAC_PI_2 / 10.0;
        let reports: Vec<MeasureReport> = (1u8..=3)
            .map(|arm| {
                let out = apply_turbulence(
                    &ghz,
                    &TurbulenceChannel::new(
                        theta,
                        ArmSet::from_arms(&[arm]).unwrap(),
                        ChannelMode::Stochastic,
                    )
                    .unwrap(),
                )
                .unwrap();
                ghz_turb::measures::report_for_density(&out).unwrap()
            })
            .collect();
        // the pairwise-tangle labels permute with the arm, so compare sorted
        let fields = |r: &MeasureReport| {
            let mut t = [r.tangle_ab, r.tangle_ac, r.tangle_bc];
            t.sort_by(|a, b| a.partial_cmp(b).unwrap());
            [
                r.purity,
                r.linear_entropy,
                r.linear_entropy_generalized,
                r.three_tangle,
                t[0],
                t[1],
                t[2],
            ]
        };
        let base = fields(&reports[0]);
        for r in &reports[1..] {
            for (a, b) in fields(r).iter().zip(&base) {
                dev = dev.max((a - b).abs());
            }
        }
    }
    report(
        "criterion 8 (arm symmetry {1} vs {2} vs {3})",
        dev < 1e-10,
        format!("max deviation {dev:.3e} at 10 theta values (tol 1e-10)"),
    );
}

#[test]
fn criterion_09_determinism_and_runtime() {
    let config = SweepConfig::default();
    let start = Instant::now();
    let records1 = run_sweep(&config).unwrap();
    let elapsed = start.elapsed();
    let records2 = run_sweep(&config).unwrap();
    let mut csv1 = Vec::new();
    write_sweep_csv(&mut csv1, &config, &records1).unwrap();
    let mut csv2 = Vec::new();
    write_sweep_csv(&mut csv2, &config, &records2).unwrap();
    report(
        "criterion 9 (deterministic default sweep)",
        csv1 == csv2 && records1.len() == 600 && elapsed.as_secs_f64() < 5.0,
        format!(
            "byte-identical: {}, records: {}, runtime {elapsed:?} (< 5 s)",
            csv1 == csv2,
            records1.len()
        ),
    );
}

/// Independently coded brute-force oracle: plain `Vec<f64>` matrices, explicit
/// per-sign branch assembly, and direct Tr rho^2 summation. All operators in
/// play are real, so real arithmetic suffices.
mod oracle {
    pub type Mat = Vec<Vec<f64>>;

    fn a_op(theta: f64) -> Mat {
        vec![
            vec![theta.cosh(), theta.sinh()],
            vec![theta.sinh(), theta.cosh()],
        ]
    }

    fn eye(n: usize) -> Mat {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect()
    }

    fn kron(a: &Mat, b: &Mat) -> Mat {
        let (ar, ac, br, bc) = (a.len(), a[0].len(), b.len(), b[0].len());
        let mut out = vec![vec![0.0; ac * bc]; ar * br];
        for i in 0..ar {
            for j in 0..ac {
                for k in 0..br {
                    for l in 0..bc {
                        out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
                    }
                }
            }
        }
        out
    }

    fn matmul(a: &Mat, b: &Mat) -> Mat {
        let (n, m, p) = (a.len(), b.len(), b[0].len());
        let mut out = vec![vec![0.0; p]; n];
        for i in 0..n {
            for k in 0..m {
                for j in 0..p {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    fn transpose(a: &Mat) -> Mat {
        let (n, m) = (a.len(), a[0].len());
        (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
    }

    /// Linear entropy of the stochastic channel on GHZ, from scratch.
    pub fn stochastic_linear_entropy(theta: f64, arms: &[u8]) -> f64 {
        let mut ghz = [0.0; 8];
        ghz[0] = 0.5f64.sqrt();
        ghz[7] = 0.5f64.sqrt();
        let rho: Mat = (0..8)
            .map(|i| (0..8).map(|j| ghz[i] * ghz[j]).collect())
            .collect();

        let mut sum = vec![vec![0.0; 8]; 8];
        for pattern in 0..1usize << arms.len() {
            let mut k = vec![vec![1.0]];
            for arm in 1u8..=3 {
                let factor = match arms.iter().position(|&a| a == arm) {
                    Some(pos) => {
                        let sign = if pattern >> pos & 1 == 1 { -1.0 } else { 1.0 };
                        a_op(sign * theta)
                    }
                    None => eye(2),
                };
                k = kron(&k, &factor);
            }
            let branch = matmul(&matmul(&k, &rho), &transpose(&k));
            for (sum_row, branch_row) in sum.iter_mut().zip(&branch) {
                for (s, b) in sum_row.iter_mut().zip(branch_row) {
                    *s += b;
                }
            }
        }
        let trace: f64 = (0..8).map(|i| sum[i][i]).sum();
        for row in sum.iter_mut() {
            for v in row.iter_mut() {
                *v /= trace;
            }
        }
        let mut purity = 0.0;
        #[allow(clippy::needless_range_loop)] // deliberate index-crossed summation
        for i in 0..8 {
            for j in 0..8 {
                purity += sum[i][j] * sum[j][i];
            }
        }
        (4.0 / 3.0) * (1.0 - purity)
    }
}

#[test]
fn criterion_10_stochastic_oracle_spot_checks() {
    let cases: [(f64, &[u8]); 3] = [(0.5, &[1]), (0.5, &[1, 2, 3]), (1.0, &[1, 2])];
    let ghz = PureState::ghz().to_density();
    let mut dev: f64 = 0.0;
    for (theta, arms) in &cases {
        let expect = oracle::stochastic_linear_entropy(*theta, arms);
        let out = apply_turbulence(
            &ghz,
            &TurbulenceChannel::new(
                *theta,
                ArmSet::from_arms(arms).unwrap(),
                ChannelMode::Stochastic,
            )
            .unwrap(),
        )
        .unwrap();
        dev = dev.max((linear_entropy(&out).unwrap() - expect).abs());
    }
    report(
        "criterion 10 (stochastic brute-force oracle spot checks)",
        dev < 1e-10,
        format!("max |S_L - oracle| {dev:.3e} over 3 spot checks (tol 1e-10)"),
    );
}
