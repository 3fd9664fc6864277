//! CLI for theta-sweeps over turbulent GHZ states, Werner reference curves,
//! and the built-in verification suite.
//!
//! Exit codes: 0 success, 1 invariant/verification failure, 2 configuration
//! error.

use clap::{Args, Parser, Subcommand};
use ghz_turb::{
    run_sweep, verify, werner_curve, write_sweep_csv, write_werner_csv, ArmSet, ChannelMode,
    EntropyVariant, SweepConfig, TangleEstimator,
};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ghz-turb", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a theta sweep over arm configurations and emit CSV
    Sweep(SweepArgs),
    /// Emit an analytic Werner reference curve as CSV
    WernerCurve(WernerArgs),
    /// Run the built-in invariant suite and report each check
    Verify,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON config file mirroring the sweep config fields; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    theta_min: Option<f64>,
    #[arg(long)]
    theta_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Comma list of arm strings, e.g. 1,12,123
    #[arg(long)]
    arms: Option<String>,
    /// literal | conjugate | stochastic
    #[arg(long)]
    mode: Option<String>,
    /// paper | generalized
    #[arg(long)]
    entropy: Option<String>,
    /// dominant | pairwise
    #[arg(long)]
    tangle: Option<String>,
    /// Output CSV path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WernerArgs {
    /// 2 or 3
    #[arg(long)]
    qubits: usize,
    #[arg(long, default_value_t = 101)]
    steps: usize,
    /// paper | generalized
    #[arg(long, default_value = "paper")]
    entropy: String,
    /// dominant | pairwise
    #[arg(long, default_value = "dominant")]
    tangle: String,
    /// Output CSV path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_CONFIG_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Sweep(args) => run_sweep_command(args),
        Command::WernerCurve(args) => run_werner_command(args),
        Command::Verify => run_verify_command(),
    }
}

fn config_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_CONFIG_ERROR)
}

fn resolve_config(args: &SweepArgs) -> Result<SweepConfig, String> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            serde_json::from_str(&text)
                .map_err(|e| format!("cannot parse config {}: {e}", path.display()))?
        }
        None => SweepConfig::default(),
    };
    if let Some(v) = args.theta_min {
        config.theta_min = v;
    }
    if let Some(v) = args.theta_max {
        config.theta_max = v;
    }
    if let Some(v) = args.steps {
        config.steps = v;
    }
    if let Some(list) = &args.arms {
        config.arm_sets = list
            .split(',')
            .map(|s| s.trim().parse::<ArmSet>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
    }
    if let Some(mode) = &args.mode {
        config.mode = mode.parse::<ChannelMode>().map_err(|e| e.to_string())?;
    }
    if let Some(entropy) = &args.entropy {
        config.entropy_variant = entropy
            .parse::<EntropyVariant>()
            .map_err(|e| e.to_string())?;
    }
    if let Some(tangle) = &args.tangle {
        config.tangle_estimator = tangle
            .parse::<TangleEstimator>()
            .map_err(|e| e.to_string())?;
    }
    if let Some(out) = &args.out {
        config.output_path = Some(out.display().to_string());
    }
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

fn open_output(path: &Option<String>) -> Result<Box<dyn Write>, String> {
    match path {
        Some(p) => {
            let file =
                File::create(p).map_err(|e| format!("cannot create output file {p}: {e}"))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn run_sweep_command(args: SweepArgs) -> ExitCode {
    let config = match resolve_config(&args) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    let records = match run_sweep(&config) {
        Ok(r) => r,
        Err(e) => return config_error(e),
    };
    let mut out = match open_output(&config.output_path) {
        Ok(w) => w,
        Err(e) => return config_error(e),
    };
    match write_sweep_csv(&mut out, &config, &records).and_then(|_| Ok(out.flush()?)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
    }
}

fn run_werner_command(args: WernerArgs) -> ExitCode {
    let entropy = match args.entropy.parse::<EntropyVariant>() {
        Ok(v) => v,
        Err(e) => return config_error(e),
    };
    let tangle = match args.tangle.parse::<TangleEstimator>() {
        Ok(v) => v,
        Err(e) => return config_error(e),
    };
    let points = match werner_curve(args.qubits, args.steps, entropy, tangle) {
        Ok(p) => p,
        Err(e) => return config_error(e),
    };
    let path = args.out.as_ref().map(|p| p.display().to_string());
    let mut out = match open_output(&path) {
        Ok(w) => w,
        Err(e) => return config_error(e),
    };
    match write_werner_csv(&mut out, args.qubits, entropy, tangle, &points)
        .and_then(|_| Ok(out.flush()?))
    {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
    }
}

fn run_verify_command() -> ExitCode {
    match verify() {
        Ok(report) => {
            println!("{report}");
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY_FAILED)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
    }
}
