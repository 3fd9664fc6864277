//! Simulation of hyperbolic polarization turbulence acting on one, two, or
//! three arms of a three-photon GHZ state, with entanglement diagnostics
//! (linear entropy, pairwise tangle, three-tangle, CKW monogamy) and analytic
//! Werner-state reference curves.

pub mod measures;
pub mod qmat;
pub mod states;
pub mod sweep;
pub mod turbulence;

pub use measures::{
    concurrence, linear_entropy, linear_entropy_generalized, mixed_three_tangle_estimate,
    monogamy_report, purity, residual_tangle, tangle, three_tangle, MeasureError, MeasureReport,
};
pub use qmat::{Complex, ComplexMatrix, QmatError};
pub use states::{DensityMatrix, PureState, StateError};
pub use sweep::{
    run_sweep, verify, werner_curve, write_sweep_csv, write_werner_csv, EntropyVariant,
    SweepConfig, SweepError, SweepRecord, TangleEstimator, VerifyReport, WernerPoint,
};
pub use turbulence::{
    apply_turbulence, arm_operator, turbulence_operator, ArmSet, ChannelMode, TurbulenceChannel,
    TurbulenceError,
};
