//! Command-line front end: identity verification on random states, the
//! amplitude-damping sudden-death sweep, and single-state correlation
//! reports.
//!
//! Exit codes: 0 — success; 1 — a numerical residual exceeded the
//! tolerance gate; 2 — usage, configuration or data error.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qlii_core::dynamics::{esd_grid, esd_sweep, InitialAmplitudes};
use qlii_core::lii::{identity_residuals, TripartiteLabels};
use qlii_core::measures::{correlation_report, OptimizerConfig};
use qlii_core::qmat::haar_random_pure;
use qlii_core::statefile::{load_state, LoadedState};
use qlii_core::PureState;

#[derive(Parser)]
#[command(
    name = "qlii",
    about = "Quantum correlation measures and locally inaccessible information on small states",
    version
)]
struct RunConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every LII conservation identity on Haar-random tripartite
    /// pure states and emit the residuals as CSV.
    Verify(VerifyArgs),
    /// Sweep the amplitude-damping strength and emit the entanglement /
    /// LII balance curves as CSV.
    Esd(EsdArgs),
    /// Print the correlation report of a state loaded from a file.
    Measure(MeasureArgs),
}

#[derive(Args)]
struct OptimizerArgs {
    /// Measurement-basis grid resolution in theta.
    #[arg(long, default_value_t = 60)]
    grid_theta: usize,
    /// Measurement-basis grid resolution in phi.
    #[arg(long, default_value_t = 120)]
    grid_phi: usize,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            grid_theta: self.grid_theta,
            grid_phi: self.grid_phi,
            ..OptimizerConfig::default()
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of Haar-random states to sample.
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Base seed; trial t uses seed + t.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Subsystem dimensions of the tripartite state, comma-separated.
    #[arg(long, default_value = "2,2,2")]
    dims: String,
    /// Residual gate: exit 1 if any identity residual exceeds this.
    #[arg(long, default_value_t = 2e-3)]
    tol: f64,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Check a fixture state from a file (kind: pure, three subsystems)
    /// instead of sampling.
    #[arg(long)]
    state: Option<PathBuf>,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

#[derive(Args)]
struct EsdArgs {
    /// Initial |00> population α² of the pair state α|00> + β|11>.
    #[arg(long = "alpha-sq", default_value_t = 1.0 / 3.0)]
    alpha_sq: f64,
    /// Number of equally spaced damping strengths in [0, 1].
    #[arg(long, default_value_t = 101)]
    steps: usize,
    /// Residual gate on the EOF decomposition at every grid point.
    #[arg(long, default_value_t = 5e-3)]
    tol: f64,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

#[derive(Args)]
struct MeasureArgs {
    /// State file to analyze.
    #[arg(long)]
    state: PathBuf,
    /// Index of the measured subsystem (must be a qubit).
    #[arg(long, default_value_t = 1)]
    measured: usize,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

fn parse_dims(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad dimension '{t}'"))
        })
        .collect()
}

/// Every float in CSV and report output carries 12 significant digits.
fn fmt(value: f64) -> String {
    // fold -0.0 into 0.0 so equal values always print identically
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{value:.11e}")
}

enum Outcome {
    Pass,
    ResidualBreach,
}

fn writer_for(out: &Option<PathBuf>) -> std::io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let result = match config.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Esd(args) => cmd_esd(args),
        Command::Measure(args) => cmd_measure(args),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::ResidualBreach) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Verifies that every measured party in a tripartite split can be
/// reached: each discord needs either a qubit measured party or a qubit
/// target with a qubit bridge, which holds iff at least two of the three
/// dimensions are 2.
fn check_verify_dims(dims: &[usize]) -> Result<(), String> {
    if dims.len() != 3 {
        return Err(format!(
            "--dims must describe a tripartite system, got {dims:?}"
        ));
    }
    if dims.iter().any(|&d| d < 2) {
        return Err(format!("every dimension must be at least 2, got {dims:?}"));
    }
    if dims.iter().filter(|&&d| d == 2).count() < 2 {
        return Err(format!(
            "at least two parties must be qubits so that every discord and EOF has a route, got {dims:?}"
        ));
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<Outcome, String> {
    let cfg = args.optimizer.config();
    cfg.validate().map_err(|e| e.to_string())?;
    if args.tol <= 0.0 {
        return Err(format!("--tol must be positive, got {}", args.tol));
    }

    let states: Vec<PureState> = if let Some(path) = &args.state {
        let loaded = load_state(path).map_err(|e| e.to_string())?;
        let psi = match loaded {
            LoadedState::Pure(psi) => psi,
            LoadedState::Density(_) => {
                return Err("identity checks need a pure fixture (kind: pure)".into())
            }
        };
        if psi.n_subsystems() != 3 {
            return Err(format!(
                "fixture must have exactly three subsystems, got dims {:?}",
                psi.dims()
            ));
        }
        check_verify_dims(psi.dims())?;
        vec![psi]
    } else {
        if args.trials == 0 {
            return Err("no trials requested".into());
        }
        let dims = parse_dims(&args.dims)?;
        check_verify_dims(&dims)?;
        (0..args.trials)
            .map(|t| haar_random_pure(&dims, args.seed.wrapping_add(t as u64)))
            .collect::<qlii_core::Result<_>>()
            .map_err(|e| e.to_string())?
    };

    let labels = TripartiteLabels::qubits();
    let mut out = writer_for(&args.out).map_err(|e| e.to_string())?;
    writeln!(out, "trial,identity,lhs,rhs,residual,route").map_err(|e| e.to_string())?;

    let mut worst: (f64, usize, &'static str) = (f64::NEG_INFINITY, 0, "none");
    for (trial, psi) in states.iter().enumerate() {
        let report = identity_residuals(psi, &labels, &cfg).map_err(|e| e.to_string())?;
        for check in report.checks() {
            writeln!(
                out,
                "{trial},{},{},{},{},{}",
                check.name,
                fmt(check.lhs),
                fmt(check.rhs),
                fmt(check.residual()),
                check.route
            )
            .map_err(|e| e.to_string())?;
            if check.residual() > worst.0 {
                worst = (check.residual(), trial, check.name);
            }
        }
    }
    out.flush().map_err(|e| e.to_string())?;

    eprintln!(
        "checked {} state(s); max residual {} ({} on trial {})",
        states.len(),
        fmt(worst.0),
        worst.2,
        worst.1
    );
    if worst.0 <= args.tol {
        Ok(Outcome::Pass)
    } else {
        eprintln!(
            "worst offender: identity {} on trial {} with residual {} > tol {}",
            worst.2,
            worst.1,
            fmt(worst.0),
            fmt(args.tol)
        );
        Ok(Outcome::ResidualBreach)
    }
}

fn cmd_esd(args: EsdArgs) -> Result<Outcome, String> {
    let cfg = args.optimizer.config();
    cfg.validate().map_err(|e| e.to_string())?;
    if !(args.alpha_sq > 0.0 && args.alpha_sq < 1.0) {
        return Err(format!(
            "--alpha-sq must lie strictly inside (0,1), got {}",
            args.alpha_sq
        ));
    }
    if args.tol <= 0.0 {
        return Err(format!("--tol must be positive, got {}", args.tol));
    }
    let amps = InitialAmplitudes::from_alpha_sq(args.alpha_sq).map_err(|e| e.to_string())?;
    let grid = esd_grid(args.steps).map_err(|e| e.to_string())?;
    let records = esd_sweep(&amps, &grid, &cfg).map_err(|e| e.to_string())?;

    let mut out = writer_for(&args.out).map_err(|e| e.to_string())?;
    writeln!(
        out,
        "p,eof_ab,avg_lii_ab,balance_sum,concurrence_ab,eab2_residual"
    )
    .map_err(|e| e.to_string())?;
    let mut worst = (0.0f64, 0.0f64);
    for r in &records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt(r.p),
            fmt(r.eof_ab),
            fmt(r.avg_lii_ab),
            fmt(r.balance_sum),
            fmt(r.concurrence_ab),
            fmt(r.eab2_residual)
        )
        .map_err(|e| e.to_string())?;
        if r.eab2_residual > worst.0 {
            worst = (r.eab2_residual, r.p);
        }
    }
    out.flush().map_err(|e| e.to_string())?;

    eprintln!(
        "swept {} points; max EOF-decomposition residual {} at p = {}",
        records.len(),
        fmt(worst.0),
        fmt(worst.1)
    );
    if worst.0 <= args.tol {
        Ok(Outcome::Pass)
    } else {
        eprintln!(
            "residual gate breached: {} > {}",
            fmt(worst.0),
            fmt(args.tol)
        );
        Ok(Outcome::ResidualBreach)
    }
}

fn cmd_measure(args: MeasureArgs) -> Result<Outcome, String> {
    let cfg = args.optimizer.config();
    cfg.validate().map_err(|e| e.to_string())?;
    let rho = load_state(&args.state)
        .map_err(|e| e.to_string())?
        .into_density();
    let report = correlation_report(&rho, args.measured, &cfg).map_err(|e| e.to_string())?;

    let mut lines = vec![
        ("s_a", report.s_a),
        ("s_b", report.s_b),
        ("s_ab", report.s_ab),
        ("mutual_info", report.mutual_info),
        ("accessible", report.accessible),
        ("discord", report.discord),
        ("cond_entropy", report.cond_entropy),
        ("cond_entropy_measured", report.cond_entropy_measured),
    ];
    if let Some(eof) = report.eof {
        lines.push(("eof", eof));
    }
    lines.push(("theta_opt", report.basis_opt.theta()));
    lines.push(("phi_opt", report.basis_opt.phi()));

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (key, value) in lines {
        writeln!(out, "{key}={}", fmt(value)).map_err(|e| e.to_string())?;
    }
    Ok(Outcome::Pass)
}
