// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! `chordarc`: simulate, audit and sweep curve flows from the command line.
//!
//! Exit status is 0 when every check passed or was inconclusive, 2 when any
//! check failed, and 1 on usage, configuration or I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chordarc::config::RunConfig;
use chordarc::generate::{generate, GeneratorKind, GeneratorSpec};
use chordarc::io::{curve_to_string, read_curve_file, write_curve_file};
use chordarc::session;
use chordarc::verify::render_report;

const EXIT_FAIL: u8 = 2;
const EXIT_ERROR: u8 = 1;

#[derive(Parser)]
#[command(name = "chordarc", version, about = "Chord-arc and total-curvature monitors for forced curve shortening flows")]
struct Cli {
    /// More log output (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one flow from a configuration file and check it.
    Simulate {
        config: PathBuf,
        /// Overrides `output` from the configuration.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Static chord-arc and total-curvature scan of a curve file.
    Audit {
        curve: PathBuf,
        /// Print the audit as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the grid in the configuration's `[sweep]` section.
    Sweep {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a generated curve in the curve file format.
    Generate {
        /// circle, ellipse, star, fourier, dumbbell or spiral_notch.
        name: String,
        #[arg(short, long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Generator parameter as `name=value`; repeatable.
        #[arg(short, long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        /// Destination file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got '{s}'"))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("'{value}' is not a number"))?;
    Ok((name.trim().to_string(), value))
}

fn init_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("CHORDARC_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("CHORDARC_THREADS must be a positive integer, got '{value}'"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_ERROR);
    }
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

/// Returns whether every check passed or was inconclusive.
fn execute(command: Command) -> Result<bool, chordarc::Error> {
    match command {
        Command::Simulate { config, output } => {
            let mut cfg = RunConfig::from_file(&config)?;
            if output.is_some() {
                cfg.output = output;
            }
            let sim = session::simulate(&cfg)?;
            println!(
                "status {} at t = {} ({} samples)",
                sim.trajectory.status.label(),
                sim.trajectory.final_time(),
                sim.trajectory.samples.len()
            );
            print!("{}", render_report(&sim.report));
            Ok(!sim.report.any_failed())
        }
        Command::Audit { curve, json } => {
            let curve = read_curve_file(&curve)?;
            let audit = session::audit(&curve)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&audit).expect("audit is serializable")
                );
            } else {
                print!("{}", audit.render());
            }
            Ok(audit.duality_holds())
        }
        Command::Sweep { config, output } => {
            let mut cfg = RunConfig::from_file(&config)?;
            if output.is_some() {
                cfg.output = output;
            }
            let outcome = session::sweep(&cfg)?;
            print!("{}", outcome.to_csv());
            Ok(!outcome.any_failed())
        }
        Command::Generate {
            name,
            n,
            seed,
            params,
            output,
        } => {
            let kind: GeneratorKind = name.parse().map_err(chordarc::Error::Generate)?;
            let mut spec = GeneratorSpec::new(kind, n);
            for (k, v) in params {
                spec = spec.with(&k, v);
            }
            let g = generate(&spec, seed)?;
            eprintln!(
                "theta0 in [{:.6}, {:.6}], admissible = {}",
                g.theta0_min, g.theta0_max, g.admissible
            );
            match output {
                Some(path) => write_curve_file(&g.curve, &path)?,
                None => print!("{}", curve_to_string(&g.curve)),
            }
            Ok(true)
        }
    }
}
