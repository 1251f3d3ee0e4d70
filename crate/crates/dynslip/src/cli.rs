//! The `dynslip` command-line interface.
//!
//! Subcommands: `eigen`, `shear`, `periodic`, `galerkin`, `figure`,
//! `verify`.  Exit codes: 0 on success, 2 on validation/usage errors, 3 on
//! numerical failures.  All CSV output goes through [`crate::report`], so
//! identical invocations produce byte-identical files.

use crate::config::FlatConfig;
use crate::figures::{reproduce_figure, FigureError};
use crate::galerkin::{energy_report, run as galerkin_run};
use crate::params::SlipParams;
use crate::periodic::{dirichlet_wall_shear, PeriodicScenario};
use crate::report::{format_float, CsvDoc};
use crate::shear::{boundary_slip_limit, stationary, RampDelta, ShearScenario};
use crate::spectral::Basis;
use crate::verify::{run_suite, SUITES};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "dynslip",
    version,
    about = "Channel flows with the dynamic slip boundary condition: spectral solutions, constitutive graphs, Galerkin runs, finite-difference cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ChannelArgs {
    /// Slip coefficient alpha (>= 0)
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Dynamic coefficient beta (>= 0)
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
    /// Channel height
    #[arg(long, default_value_t = std::f64::consts::PI)]
    h: f64,
    /// Number of modes in the truncation
    #[arg(long, default_value_t = 10)]
    modes: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the slip eigenbasis and emit `i,lambda,amplitude`
    Eigen {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Moving-wall start-up flow; emits `t,slip,stationary_gap`
    Shear {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Ramp time in (0, 1]; 0 selects the analytic delta -> 0 limit
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        /// Time horizon
        #[arg(long, default_value_t = 1.0)]
        t_end: f64,
        /// Sample count; the grid starts at t_end/samples
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pressure-driven periodic flow; emits `t,wall_shear,dirichlet_wall_shear`
    Periodic {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Forcing period T
        #[arg(long, default_value_t = 2.0 * std::f64::consts::PI)]
        period: f64,
        /// Samples over one period (inclusive of both endpoints)
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Galerkin run from a flat config file; emits `t,c_1..c_n,energy_residual`
    Galerkin {
        /// Flat `key = value` configuration file
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reproduce a canned parameter study (ids 2, 3, 4, 5)
    Figure {
        #[arg(long)]
        id: u8,
        /// Directory receiving one CSV per curve
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Run a self-check suite and print a pass/fail table
    Verify {
        /// One of: eigen, graphs, shear, periodic, galerkin, all
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Entry point taking explicit arguments; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not failures
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_VALIDATION,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

/// Entry point for the binary.
pub fn run_from_env() -> i32 {
    run(std::env::args_os())
}

struct CliFailure {
    code: i32,
    message: String,
}

impl CliFailure {
    fn validation(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_NUMERICAL,
            message: message.into(),
        }
    }
}

fn slip_params(channel: &ChannelArgs) -> Result<SlipParams, CliFailure> {
    SlipParams::new(channel.alpha, channel.beta, channel.h)
        .map_err(|e| CliFailure::validation(e.to_string()))
}

fn build_basis(params: SlipParams, modes: usize) -> Result<Basis, CliFailure> {
    if modes == 0 {
        return Err(CliFailure::validation("--modes must be at least 1"));
    }
    Basis::new(params, modes).map_err(|e| CliFailure::numerical(e.to_string()))
}

fn dispatch(command: Command) -> Result<(), CliFailure> {
    match command {
        Command::Eigen { channel, out } => {
            let params = slip_params(&channel)?;
            let basis = build_basis(params, channel.modes)?;
            let mut doc = CsvDoc::new(vec!["i", "lambda", "amplitude"]);
            common_meta(&mut doc, "eigen", &channel);
            for pair in basis.pairs() {
                doc.row_cells(vec![
                    pair.index.to_string(),
                    format_float(pair.lambda),
                    format_float(pair.amplitude),
                ]);
            }
            let record = doc
                .write("eigen", &out)
                .map_err(|e| CliFailure::validation(e.to_string()))?;
            println!(
                "wrote {} ({} rows, sha256 {})",
                record.path.display(),
                record.rows,
                &record.sha256[..12]
            );
            Ok(())
        }
        Command::Shear {
            channel,
            delta,
            t_end,
            samples,
            out,
        } => {
            let params = slip_params(&channel)?;
            if samples == 0 {
                return Err(CliFailure::validation("--samples must be at least 1"));
            }
            if !(t_end > 0.0 && t_end.is_finite()) {
                return Err(CliFailure::validation("--t-end must be positive"));
            }
            let basis = build_basis(params, channel.modes)?;
            let ramp = if delta == 0.0 {
                RampDelta::AnalyticLimit
            } else {
                RampDelta::Finite(delta)
            };
            let scenario = ShearScenario::new(basis, ramp)
                .map_err(|e| CliFailure::validation(e.to_string()))?;
            let w_stat = stationary(&params, params.h);
            let mut doc = CsvDoc::new(vec!["t", "slip", "stationary_gap"]);
            common_meta(&mut doc, "shear", &channel);
            match ramp {
                RampDelta::AnalyticLimit => doc.meta("delta", "analytic-limit"),
                RampDelta::Finite(d) => doc.meta_float("delta", d),
            };
            doc.meta_float("t_end", t_end)
                .meta("samples", samples.to_string())
                .meta_float("stationary_w_h", w_stat);
            // the delta -> 0 limit is discontinuous at t = 0, so the grid
            // starts one sample in
            for k in 1..=samples {
                let t = k as f64 * t_end / samples as f64;
                let w = match ramp {
                    RampDelta::AnalyticLimit => boundary_slip_limit(scenario.basis(), t),
                    RampDelta::Finite(_) => scenario
                        .solution(t, params.h)
                        .map_err(|e| CliFailure::numerical(e.to_string()))?,
                };
                doc.row(&[t, 1.0 - w, w - w_stat]);
            }
            let record = doc
                .write("shear", &out)
                .map_err(|e| CliFailure::validation(e.to_string()))?;
            println!(
                "wrote {} ({} rows, sha256 {})",
                record.path.display(),
                record.rows,
                &record.sha256[..12]
            );
            Ok(())
        }
        Command::Periodic {
            channel,
            period,
            samples,
            out,
        } => {
            let params = slip_params(&channel)?;
            if samples == 0 {
                return Err(CliFailure::validation("--samples must be at least 1"));
            }
            let basis = build_basis(params, channel.modes)?;
            let scenario = PeriodicScenario::new(basis, period)
                .map_err(|e| CliFailure::validation(e.to_string()))?;
            let mut doc = CsvDoc::new(vec!["t", "wall_shear", "dirichlet_wall_shear"]);
            common_meta(&mut doc, "periodic", &channel);
            doc.meta_float("period", period)
                .meta("samples", samples.to_string());
            for k in 0..=samples {
                let t = k as f64 * period / samples as f64;
                doc.row(&[
                    t,
                    scenario.wall_shear(t),
                    dirichlet_wall_shear(params.h, period, channel.modes, t),
                ]);
            }
            let record = doc
                .write("periodic", &out)
                .map_err(|e| CliFailure::validation(e.to_string()))?;
            println!(
                "wrote {} ({} rows, sha256 {})",
                record.path.display(),
                record.rows,
                &record.sha256[..12]
            );
            Ok(())
        }
        Command::Galerkin { config, out } => {
            let flat = FlatConfig::from_file(&config)
                .map_err(|e| CliFailure::validation(format!("{}: {e}", config.display())))?;
            let gc = flat
                .galerkin_config()
                .map_err(|e| CliFailure::validation(e.to_string()))?;
            let output = galerkin_run(&gc, |_| 0.0).map_err(|e| {
                use crate::galerkin::GalerkinError::*;
                match e {
                    Config(_) => CliFailure::validation(e.to_string()),
                    _ => CliFailure::numerical(e.to_string()),
                }
            })?;
            let mut header: Vec<String> = vec!["t".into()];
            header.extend((1..=gc.n_modes).map(|i| format!("c_{i}")));
            header.push("energy_residual".into());
            let mut doc = CsvDoc::new(header);
            doc.meta("scenario", "galerkin")
                .meta("config", config.display().to_string())
                .meta_float("alpha", gc.params.alpha)
                .meta_float("beta", gc.params.beta)
                .meta_float("h", gc.params.h)
                .meta("modes", gc.n_modes.to_string())
                .meta_float("dt", gc.dt)
                .meta_float("t_end", gc.t_end)
                .meta("tool_version", env!("CARGO_PKG_VERSION"));
            let residuals = energy_report(&output.ledger);
            for (k, t) in output.trajectory.times.iter().enumerate() {
                let mut row = Vec::with_capacity(gc.n_modes + 2);
                row.push(*t);
                row.extend_from_slice(&output.trajectory.coeffs[k]);
                row.push(residuals[k].1);
                doc.row(&row);
            }
            let record = doc
                .write("galerkin", &out)
                .map_err(|e| CliFailure::validation(e.to_string()))?;
            println!(
                "wrote {} ({} rows, sha256 {})",
                record.path.display(),
                record.rows,
                &record.sha256[..12]
            );
            Ok(())
        }
        Command::Figure { id, out_dir } => {
            let records = reproduce_figure(id, &out_dir).map_err(|e| match e {
                FigureError::UnknownId(_) => CliFailure::validation(e.to_string()),
                FigureError::Io(_) => CliFailure::validation(e.to_string()),
                _ => CliFailure::numerical(e.to_string()),
            })?;
            for record in &records {
                println!(
                    "wrote {} ({} rows, sha256 {})",
                    record.path.display(),
                    record.rows,
                    &record.sha256[..12]
                );
            }
            Ok(())
        }
        Command::Verify { suite } => {
            let checks = run_suite(&suite).ok_or_else(|| {
                CliFailure::validation(format!(
                    "unknown suite `{suite}`; available: {}",
                    SUITES.join(", ")
                ))
            })?;
            let mut all_passed = true;
            for check in &checks {
                let tag = if check.passed { "PASS" } else { "FAIL" };
                println!("[{tag}] {} :: {}", check.name, check.detail);
                all_passed &= check.passed;
            }
            println!(
                "{}/{} checks passed",
                checks.iter().filter(|c| c.passed).count(),
                checks.len()
            );
            if all_passed {
                Ok(())
            } else {
                Err(CliFailure::numerical("verification failed"))
            }
        }
    }
}

fn common_meta(doc: &mut CsvDoc, scenario: &str, channel: &ChannelArgs) {
    doc.meta("scenario", scenario)
        .meta_float("alpha", channel.alpha)
        .meta_float("beta", channel.beta)
        .meta_float("h", channel.h)
        .meta("modes", channel.modes.to_string())
        .meta("tool_version", env!("CARGO_PKG_VERSION"));
}
