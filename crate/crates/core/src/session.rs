// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end runs: load or generate a curve, integrate, verify, write files.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::io::BufWriter;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{CurveSource, RunConfig};
use crate::curve::DiscreteCurve;
use crate::flow::{self, Trajectory};
use crate::generate::generate;
use crate::io::{read_curve_file, write_curve_file};
use crate::pair::{PairRecord, PairTable, ThetaExtrema};
use crate::verify::{render_report, verify, CheckId, CheckStatus, MonitorReport};
use crate::Error;

pub struct Simulation {
    pub trajectory: Trajectory,
    pub report: MonitorReport,
}

/// Builds the initial curve named by the configuration.
pub fn initial_curve(cfg: &RunConfig) -> Result<DiscreteCurve, Error> {
    match &cfg.source {
        CurveSource::Generator(spec) => {
            let g = generate(spec, cfg.seed)?;
            log::info!(
                "generated {} (n = {}): theta0 in [{:.4}, {:.4}], admissible = {}",
                spec.kind,
                spec.n,
                g.theta0_min,
                g.theta0_max,
                g.admissible
            );
            Ok(g.curve)
        }
        CurveSource::File(path) => read_curve_file(path),
    }
}

/// Runs the flow and every enabled check; writes outputs if configured.
pub fn simulate(cfg: &RunConfig) -> Result<Simulation, Error> {
    let initial = initial_curve(cfg)?;
    let mut stepper = cfg.stepper.clone();
    if cfg.monitors.contains(CheckId::ThetaHeat) {
        stepper.keep_snapshots = true;
    }
    let trajectory = flow::run(&initial, &cfg.forcing, &stepper)?;
    log::info!(
        "run ended {} at t = {} after {} samples",
        trajectory.status.label(),
        trajectory.final_time(),
        trajectory.samples.len()
    );
    let report = verify(&trajectory, &cfg.monitors);
    if let Some(dir) = &cfg.output {
        write_outputs(dir, &trajectory, &report, cfg.stepper.keep_snapshots)?;
    }
    Ok(Simulation { trajectory, report })
}

/// `trajectory.csv`, `report.json`, `report.txt` and optionally
/// `snapshots/t_<index>.curve` under `dir`.
pub fn write_outputs(
    dir: &Path,
    trajectory: &Trajectory,
    report: &MonitorReport,
    snapshots: bool,
) -> Result<(), Error> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let csv = dir.join("trajectory.csv");
    let file = fs::File::create(&csv).map_err(|e| Error::io(&csv, e))?;
    trajectory
        .write_csv(BufWriter::new(file))
        .map_err(|e| Error::io(&csv, e))?;

    let json = dir.join("report.json");
    fs::write(&json, report.to_json() + "\n").map_err(|e| Error::io(&json, e))?;
    let text = dir.join("report.txt");
    fs::write(&text, render_report(report)).map_err(|e| Error::io(&text, e))?;

    if snapshots {
        let snap_dir = dir.join("snapshots");
        fs::create_dir_all(&snap_dir).map_err(|e| Error::io(&snap_dir, e))?;
        for (k, curve) in trajectory.snapshots.iter().enumerate() {
            write_curve_file(curve, &snap_dir.join(format!("t_{k:05}.curve")))?;
        }
    }
    Ok(())
}

/// Static facts about a single curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Audit {
    pub n: usize,
    pub length: f64,
    pub area: f64,
    pub embedded: bool,
    pub theta: ThetaExtrema,
    pub duality_gap: f64,
    pub duality_tolerance: f64,
    pub min_ratio: Option<PairRecord>,
    pub admissible: bool,
}

impl Audit {
    pub fn duality_holds(&self) -> bool {
        self.duality_gap.abs() <= self.duality_tolerance
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vertices        {}", self.n);
        let _ = writeln!(out, "length          {:.10}", self.length);
        let _ = writeln!(out, "area            {:.10}", self.area);
        let _ = writeln!(out, "embedded        {}", self.embedded);
        match &self.min_ratio {
            Some(r) => {
                let _ = writeln!(
                    out,
                    "ratio_min       {:.6} at ({}, {}), l/L = {:.4}",
                    r.ratio,
                    r.i,
                    r.j,
                    r.l / self.length
                );
            }
            None => {
                let _ = writeln!(out, "ratio_min       0 (self-touching)");
            }
        }
        let _ = writeln!(
            out,
            "theta_min       {:.6} at {:?}",
            self.theta.min, self.theta.argmin
        );
        let _ = writeln!(
            out,
            "theta_max       {:.6} at {:?}",
            self.theta.max, self.theta.argmax
        );
        let _ = writeln!(
            out,
            "duality gap     {:.3e} (tolerance {:.3e}) {}",
            self.duality_gap,
            self.duality_tolerance,
            if self.duality_holds() { "PASS" } else { "FAIL" }
        );
        let _ = writeln!(
            out,
            "admissible      {} (theta_min >= -pi)",
            self.admissible
        );
        out
    }
}

pub fn audit(curve: &DiscreteCurve) -> Result<Audit, Error> {
    let curve = curve.clone().into_positive();
    let table = PairTable::new(&curve)?;
    let theta = table.theta_scan();
    let min_ratio = match table.min_chord_arc() {
        Ok(r) => Some(r),
        Err(crate::CurveError::SelfTouching { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(Audit {
        n: curve.len(),
        length: table.total_length(),
        area: curve.enclosed_area(),
        embedded: curve.is_embedded(),
        theta,
        duality_gap: theta.duality_gap(),
        duality_tolerance: 1e-2f64.max(3.0 * table.geometry().max_abs_turning()),
        min_ratio,
        admissible: theta.min >= -PI,
    })
}

/// One line of the sweep aggregate.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub params: Vec<(String, f64)>,
    pub forcing: String,
    pub status: String,
    pub final_time: f64,
    pub ratio_min: f64,
    pub theta_min: f64,
    pub checks: Vec<(CheckId, CheckStatus)>,
}

pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
}

impl SweepOutcome {
    pub fn any_failed(&self) -> bool {
        self.rows
            .iter()
            .any(|r| r.status == "ERROR" || r.checks.iter().any(|c| c.1 == CheckStatus::Fail))
    }

    /// Sorted by parameter values, then forcing name.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let Some(first) = self.rows.first() else {
            return out;
        };
        for (name, _) in &first.params {
            let _ = write!(out, "{name},");
        }
        let _ = write!(out, "forcing,status,final_time,ratio_min,theta_min");
        for (id, _) in &first.checks {
            let _ = write!(out, ",{id}");
        }
        out.push('\n');
        for row in &self.rows {
            for (_, v) in &row.params {
                let _ = write!(out, "{v},");
            }
            let _ = write!(
                out,
                "{},{},{:.16e},{:.16e},{:.16e}",
                row.forcing, row.status, row.final_time, row.ratio_min, row.theta_min
            );
            for (_, status) in &row.checks {
                let _ = write!(out, ",{status}");
            }
            out.push('\n');
        }
        out
    }
}

/// Runs every point of the sweep grid, in parallel, and writes
/// `sweep.csv` plus each run's outputs under `runs/<index>/`.
pub fn sweep(cfg: &RunConfig) -> Result<SweepOutcome, Error> {
    let grid = cfg.expand_sweep();
    let runs: Vec<(usize, RunConfig)> = grid
        .into_iter()
        .enumerate()
        .map(|(k, mut c)| {
            c.output = cfg.output.as_ref().map(|d| d.join("runs").join(format!("{k:04}")));
            (k, c)
        })
        .collect();
    let mut rows: Vec<SweepRow> = runs
        .par_iter()
        .map(|(_, c)| {
            let params = match &c.source {
                CurveSource::Generator(spec) => spec
                    .kind
                    .defaults()
                    .iter()
                    .map(|(name, _)| (name.to_string(), spec.param(name)))
                    .collect(),
                CurveSource::File(_) => Vec::new(),
            };
            let template: Vec<(CheckId, CheckStatus)> = c
                .monitors
                .iter()
                .map(|id| (id, CheckStatus::Inconclusive))
                .collect();
            match simulate(c) {
                Ok(sim) => {
                    let last = sim.trajectory.samples.last();
                    SweepRow {
                        params,
                        forcing: c.forcing.to_string(),
                        status: sim.trajectory.status.label().to_string(),
                        final_time: sim.trajectory.final_time(),
                        ratio_min: sim
                            .trajectory
                            .samples
                            .iter()
                            .map(|s| s.ratio_min)
                            .fold(f64::INFINITY, f64::min),
                        theta_min: last.map_or(f64::NAN, |s| s.theta_min),
                        checks: sim.report.checks.iter().map(|r| (r.name, r.status)).collect(),
                    }
                }
                Err(e) => {
                    log::error!("sweep point failed: {e}");
                    SweepRow {
                        params,
                        forcing: c.forcing.to_string(),
                        status: "ERROR".into(),
                        final_time: 0.0,
                        ratio_min: f64::NAN,
                        theta_min: f64::NAN,
                        checks: template,
                    }
                }
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        a.params
            .iter()
            .zip(&b.params)
            .map(|(x, y)| x.1.total_cmp(&y.1))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.forcing.cmp(&b.forcing))
    });
    let outcome = SweepOutcome { rows };
    if let Some(dir) = &cfg.output {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join("sweep.csv");
        fs::write(&path, outcome.to_csv()).map_err(|e| Error::io(&path, e))?;
    }
    Ok(outcome)
}
