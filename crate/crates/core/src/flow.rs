// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! Explicit time integration of `∂X/∂t = (h − κ) ν`.
//!
//! Vertices move purely along their normals. Mesh quality is restored by
//! uniform resampling every `resample_every` steps; resampling moves no point
//! off the polygon, so it changes the parametrisation and not the curve
//! (up to the corner-cutting error of the polygon, which is second order).

use std::f64::consts::PI;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::DiscreteCurve;
use crate::error::CurveError;
use crate::forcing::{Conserved, ForcingError, ForcingSpec};
use crate::frames::LocalGeometry;
use crate::pair::{MinimizerCase, PairTable};
use crate::point::Point2;

/// Steps shorter than this are treated as a collapse of the time step.
pub const MIN_DT: f64 = 1e-16;

/// `max|κ|·Δs_min` above which the curvature is considered unresolved.
pub const RESOLUTION_LIMIT: f64 = 1.0;

#[derive(Debug, Clone, Error)]
pub enum FlowError {
    #[error("invalid stepper configuration: {0}")]
    Config(String),
    #[error("initial curve rejected: {0}")]
    Admission(CurveError),
    #[error("blow-up at t = {}: non-finite coordinates", .last_good.time)]
    BlowUp { last_good: Box<FlowState> },
    #[error("time step collapsed to {dt:e} at t = {}", .last_good.time)]
    StiffnessCollapse { dt: f64, last_good: Box<FlowState> },
    #[error("curvature unresolved at t = {}: max|kappa|*ds_min = {product:.3}", .last_good.time)]
    Unresolved {
        product: f64,
        last_good: Box<FlowState>,
    },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Forcing(#[from] ForcingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    ExplicitEuler,
    Rk2,
}

/// How the mesh is redistributed every `resample_every` steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resampling {
    /// New vertices on the polygon's edges; loses area at second order.
    Linear,
    /// New vertices on local cubics through the old ones.
    Cubic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StepperConfig {
    /// Dimensionless step-size factor in `(0, 0.5]`.
    pub cfl: f64,
    /// Mesh size the initial curve is resampled to.
    pub n: usize,
    pub resample_every: usize,
    pub resampling: Resampling,
    pub scheme: Scheme,
    pub max_time: f64,
    pub max_steps: usize,
    pub stop_on_embeddedness_loss: bool,
    pub monitor_every: usize,
    /// Keep a copy of the curve at every monitor sample.
    pub keep_snapshots: bool,
}

impl Default for StepperConfig {
    fn default() -> Self {
        StepperConfig {
            cfl: 0.4,
            n: 1024,
            resample_every: 10,
            resampling: Resampling::Cubic,
            scheme: Scheme::Rk2,
            max_time: 1.0,
            max_steps: 10_000_000,
            stop_on_embeddedness_loss: true,
            monitor_every: 200,
            keep_snapshots: false,
        }
    }
}

impl StepperConfig {
    pub fn validate(&self) -> Result<(), FlowError> {
        let bad = |msg: &str| Err(FlowError::Config(msg.to_string()));
        if !(self.cfl > 0.0 && self.cfl <= 0.5) {
            return bad("cfl must lie in (0, 0.5]");
        }
        if self.n < crate::curve::MIN_VERTICES {
            return bad("n must be at least 8");
        }
        if self.resample_every == 0 || self.monitor_every == 0 || self.max_steps == 0 {
            return bad("resample_every, monitor_every and max_steps must be positive");
        }
        if !(self.max_time.is_finite() && self.max_time > 0.0) {
            return bad("max_time must be positive and finite");
        }
        Ok(())
    }
}

/// Global scalars of the current curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scalars {
    pub length: f64,
    pub area: f64,
    pub h: f64,
    pub integral_kappa_sq: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub curve: DiscreteCurve,
    pub time: f64,
    pub step_index: usize,
    pub scalars: Scalars,
    /// Local geometry of `curve`, shared by the next step and the monitors.
    pub geometry: LocalGeometry,
}

impl FlowState {
    pub fn new(curve: DiscreteCurve, forcing: &ForcingSpec) -> Result<Self, FlowError> {
        Self::at(curve, 0.0, 0, forcing)
    }

    fn at(
        curve: DiscreteCurve,
        time: f64,
        step_index: usize,
        forcing: &ForcingSpec,
    ) -> Result<Self, FlowError> {
        let geometry = LocalGeometry::new(&curve)?;
        let area = curve.enclosed_area();
        let scalars = Scalars {
            length: geometry.length,
            area,
            h: forcing.evaluate_with(&geometry, area)?,
            integral_kappa_sq: geometry.integral_curvature_squared(),
        };
        Ok(FlowState {
            curve,
            time,
            step_index,
            scalars,
            geometry,
        })
    }
}

/// Normal speed `h − κ_i` at every vertex.
pub fn normal_velocity(curve: &DiscreteCurve, h: f64) -> Result<Vec<f64>, CurveError> {
    let geometry = LocalGeometry::new(curve)?;
    Ok(geometry.curvature().map(|k| h - k).collect())
}

/// `cfl·Δs_min²`, capped by `cfl·Δs_min / max|h − κ|`.
pub fn cfl_dt(curve: &DiscreteCurve, h: f64, config: &StepperConfig) -> Result<f64, CurveError> {
    Ok(stable_dt(&LocalGeometry::new(curve)?, h, config.cfl))
}

fn stable_dt(geometry: &LocalGeometry, h: f64, cfl: f64) -> f64 {
    let ds = geometry.min_edge_length();
    let speed = geometry
        .curvature()
        .map(|k| (h - k).abs())
        .fold(1e-12, f64::max);
    (cfl * ds * ds).min(cfl * ds / speed)
}

/// Per-vertex factors on the normal speed, `1 + O(φ²)`, chosen so that the
/// semi-discrete derivative of the conserved quantity vanishes exactly.
///
/// Moving vertex `i` by `F_i ν_i` changes the area at rate `Σ F_i c_i` with
/// `c_i = |X_{i+1} − X_{i−1}|/2`, and the length at rate `Σ F_i γ_i` with
/// `γ_i = ⟨ν_i, τ̂_{i−1} − τ̂_i⟩` (unit edge directions). Weighting the
/// speed by `Δs_i/c_i` turns the first into `Σ F_i Δs_i = hL − 2π`, and by
/// `φ_i/γ_i` the second into `Σ F_i φ_i = 2πh − Σκ_i²Δs_i`; both are zero
/// for the matching forcing.
fn conservation_weights(
    vertices: &[Point2],
    geometry: &LocalGeometry,
    forcing: &ForcingSpec,
) -> Option<Vec<f64>> {
    let conserved = forcing.conserved()?;
    let n = vertices.len();
    let weights = (0..n)
        .map(|i| {
            let prev = if i == 0 { n - 1 } else { i - 1 };
            let next = if i + 1 == n { 0 } else { i + 1 };
            let frame = &geometry.frames[i];
            match conserved {
                Conserved::Area => {
                    let half_chord = 0.5 * (vertices[next] - vertices[prev]).norm();
                    geometry.dual_lengths[i] / half_chord
                }
                Conserved::Length => {
                    let a = (vertices[i] - vertices[prev]) * (1.0 / geometry.edge_lengths[prev]);
                    let b = (vertices[next] - vertices[i]) * (1.0 / geometry.edge_lengths[i]);
                    // τ̂_{i−1} − τ̂_i = 2 sin(φ/2) times the unit bisector normal.
                    let bisector = (a + b).normalized();
                    let cos_alpha = frame.normal.dot(Point2::new(bisector.y, -bisector.x));
                    let half = 0.5 * geometry.turning[i];
                    let sinc = if half.abs() < 1e-8 { 1.0 } else { half / half.sin() };
                    sinc / cos_alpha
                }
            }
        })
        .collect();
    Some(weights)
}

/// `base + dt·w_i·(h − κ_i)ν_i`, with frames and weights taken from the
/// curve `at` whose geometry is `geometry`.
fn displaced(
    base: &[Point2],
    at: &[Point2],
    geometry: &LocalGeometry,
    forcing: &ForcingSpec,
    h: f64,
    dt: f64,
) -> Vec<Point2> {
    let weights = conservation_weights(at, geometry, forcing);
    base.iter()
        .zip(&geometry.frames)
        .enumerate()
        .map(|(i, (&x, f))| {
            let w = weights.as_ref().map_or(1.0, |w| w[i]);
            x + f.normal * (dt * w * (h - f.curvature))
        })
        .collect()
}

fn rebuild(points: Vec<Point2>, last_good: &FlowState) -> Result<DiscreteCurve, FlowError> {
    match DiscreteCurve::new(points) {
        Ok(c) => Ok(c),
        Err(CurveError::NonFinite { .. }) => Err(FlowError::BlowUp {
            last_good: Box::new(last_good.clone()),
        }),
        Err(e) => Err(e.into()),
    }
}

/// Resamples to `config.n` vertices. When the forcing conserves area or
/// length, the new polygon is then offset along its normals by the uniform
/// distance that restores the value before resampling, so mesh maintenance
/// does not leak the conserved quantity.
fn redistribute(
    curve: &DiscreteCurve,
    forcing: &ForcingSpec,
    config: &StepperConfig,
) -> Result<DiscreteCurve, CurveError> {
    let mut out = match config.resampling {
        Resampling::Linear => curve.resample_uniform(config.n)?,
        Resampling::Cubic => curve.resample_cubic(config.n)?,
    };
    let Some(kind) = forcing.conserved() else {
        return Ok(out);
    };
    let measure = |c: &DiscreteCurve| match kind {
        Conserved::Area => c.enclosed_area(),
        Conserved::Length => c.total_length(),
    };
    let target = measure(curve);
    // Offsetting by δ changes A by ≈ δL and L by ≈ δ·Σφ; two Newton steps.
    for _ in 0..2 {
        let geometry = LocalGeometry::new(&out)?;
        let rate = match kind {
            Conserved::Area => geometry.length,
            Conserved::Length => geometry.total_curvature(),
        };
        let delta = (target - measure(&out)) / rate;
        out = DiscreteCurve::new(
            out.vertices()
                .iter()
                .zip(&geometry.frames)
                .map(|(&x, f)| x + f.normal * delta)
                .collect(),
        )?;
    }
    Ok(out)
}

/// Advances one step with the CFL time step, clipped so that the step never
/// passes `config.max_time`.
pub fn step(
    state: &FlowState,
    forcing: &ForcingSpec,
    config: &StepperConfig,
) -> Result<FlowState, FlowError> {
    let geometry = &state.geometry;
    let h = state.scalars.h;

    let product = geometry.max_abs_curvature() * geometry.min_edge_length();
    if product > RESOLUTION_LIMIT {
        return Err(FlowError::Unresolved {
            product,
            last_good: Box::new(state.clone()),
        });
    }

    let mut dt = stable_dt(geometry, h, config.cfl);
    let mut end = None;
    let remaining = config.max_time - state.time;
    if remaining > 0.0 && remaining <= dt {
        dt = remaining;
        end = Some(config.max_time);
    }
    if !(dt >= MIN_DT) {
        return Err(FlowError::StiffnessCollapse {
            dt,
            last_good: Box::new(state.clone()),
        });
    }

    let base = state.curve.vertices();
    let next = match config.scheme {
        Scheme::ExplicitEuler => displaced(base, base, geometry, forcing, h, dt),
        Scheme::Rk2 => {
            let half = rebuild(displaced(base, base, geometry, forcing, h, 0.5 * dt), state)?;
            let mid_geometry = LocalGeometry::new(&half)?;
            let mid_h = forcing.evaluate_with(&mid_geometry, half.enclosed_area())?;
            displaced(base, half.vertices(), &mid_geometry, forcing, mid_h, dt)
        }
    };
    let mut curve = rebuild(next, state)?;
    let step_index = state.step_index + 1;
    if step_index % config.resample_every == 0 {
        curve = redistribute(&curve, forcing, config)?;
    }
    let time = end.unwrap_or(state.time + dt);
    FlowState::at(curve, time, step_index, forcing)
}

/// Measurements taken at a monitor sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonitorSample {
    pub time: f64,
    pub step: usize,
    pub n: usize,
    pub ratio_min: f64,
    pub argmin: (usize, usize),
    pub theta_min: f64,
    pub theta_max: f64,
    pub theta_argmin: (usize, usize),
    pub theta_argmax: (usize, usize),
    pub length: f64,
    pub area: f64,
    pub h: f64,
    pub integral_kappa_sq: f64,
    pub kappa_max: f64,
    pub max_turning: f64,
    pub embedded: bool,
    /// Critical-point residual of `d/ψ` at the argmin pair.
    pub first_variation: f64,
    /// Second-variation margin at the argmin pair.
    pub second_variation: f64,
    /// `θ/2 − πl/L` at the argmin pair when it classifies as case I.
    pub half_theta_excess: Option<f64>,
}

impl MonitorSample {
    pub fn measure(state: &FlowState) -> Result<Self, CurveError> {
        let curve = &state.curve;
        let table = PairTable::with_geometry(curve, state.geometry.clone());
        let theta = table.theta_scan();
        let embedded = curve.is_embedded();
        let geometry = table.geometry();

        let mut half_theta_excess = None;
        let (ratio_min, argmin, first_variation, second_variation) = match table.min_chord_arc() {
            Ok(rec) => {
                if let Ok(cls) = table.classify_minimizer(&rec) {
                    if cls.case == MinimizerCase::I {
                        half_theta_excess = Some(0.5 * rec.theta - PI * rec.l / table.total_length());
                    }
                }
                (
                    rec.ratio,
                    (rec.i, rec.j),
                    table.first_variation_residual(&rec)?,
                    table.second_variation_margin(&rec)?,
                )
            }
            Err(CurveError::SelfTouching { i, j }) => (0.0, (i, j), f64::NAN, f64::NAN),
            Err(e) => return Err(e),
        };

        Ok(MonitorSample {
            time: state.time,
            step: state.step_index,
            n: curve.len(),
            ratio_min,
            argmin,
            theta_min: theta.min,
            theta_max: theta.max,
            theta_argmin: theta.argmin,
            theta_argmax: theta.argmax,
            length: state.scalars.length,
            area: state.scalars.area,
            h: state.scalars.h,
            integral_kappa_sq: state.scalars.integral_kappa_sq,
            kappa_max: geometry.max_abs_curvature(),
            max_turning: geometry.max_abs_turning(),
            embedded,
            first_variation,
            second_variation,
            half_theta_excess,
        })
    }
}

/// How a run ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TerminalStatus {
    /// Reached `max_time`.
    Clean,
    MaxSteps,
    EmbeddednessLost { time: f64 },
    BlowUp { time: f64 },
    StiffnessCollapse { time: f64, dt: f64 },
    Unresolved { time: f64, product: f64 },
    Fault { time: f64, message: String },
}

impl TerminalStatus {
    pub fn label(&self) -> &'static str {
        match self {
            TerminalStatus::Clean => "CLEAN",
            TerminalStatus::MaxSteps => "MAX_STEPS",
            TerminalStatus::EmbeddednessLost { .. } => "EMBEDDEDNESS_LOST",
            TerminalStatus::BlowUp { .. } => "BLOW_UP",
            TerminalStatus::StiffnessCollapse { .. } => "STIFFNESS_COLLAPSE",
            TerminalStatus::Unresolved { .. } => "UNRESOLVED",
            TerminalStatus::Fault { .. } => "FAULT",
        }
    }
}

/// Initial-curve facts recorded before the run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Admission {
    pub theta0_min: f64,
    pub theta0_max: f64,
    /// Whether every `θ₀(p, q) ≥ −π`.
    pub admissible: bool,
    pub reoriented: bool,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub forcing: ForcingSpec,
    pub config: StepperConfig,
    pub admission: Admission,
    pub samples: Vec<MonitorSample>,
    /// Curves at the sample times when `keep_snapshots` is set.
    pub snapshots: Vec<DiscreteCurve>,
    pub status: TerminalStatus,
}

impl Trajectory {
    pub const CSV_HEADER: &'static str = "time,ratio_min,theta_min,theta_max,L,A,h,kappa_max,embedded";

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for s in &self.samples {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
                s.time,
                s.ratio_min,
                s.theta_min,
                s.theta_max,
                s.length,
                s.area,
                s.h,
                s.kappa_max,
                s.embedded
            )?;
        }
        Ok(())
    }

    pub fn final_time(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.time)
    }
}

/// Integrates from `initial` until `max_time`, `max_steps`, loss of
/// embeddedness (when configured) or a numerical stop, sampling monitors every
/// `monitor_every` steps and at the last state.
///
/// The initial curve must be embedded; a negatively oriented curve is
/// reversed first. A curve violating `θ₀ ≥ −π` is run anyway, with a warning
/// and `admissible = false` in the trajectory.
pub fn run(
    initial: &DiscreteCurve,
    forcing: &ForcingSpec,
    config: &StepperConfig,
) -> Result<Trajectory, FlowError> {
    config.validate()?;
    let reoriented = initial.orientation() == crate::curve::Orientation::Negative;
    let curve = initial.clone().into_positive();
    if let Some((i, j)) = curve.self_intersection() {
        return Err(FlowError::Admission(CurveError::NotEmbedded(i, j)));
    }
    let curve = curve.resample_uniform(config.n)?;
    let theta = PairTable::new(&curve)?.theta_scan();
    let admissible = theta.min >= -PI;
    if !admissible {
        log::warn!(
            "initial curve violates theta >= -pi (theta_min = {:.4}); running outside the hypothesis",
            theta.min
        );
    }
    let admission = Admission {
        theta0_min: theta.min,
        theta0_max: theta.max,
        admissible,
        reoriented,
    };

    let mut state = FlowState::new(curve, forcing)?;
    let mut samples = Vec::new();
    let mut snapshots = Vec::new();
    let mut record = |state: &FlowState| -> Result<bool, CurveError> {
        let sample = MonitorSample::measure(state)?;
        samples.push(sample);
        if config.keep_snapshots {
            snapshots.push(state.curve.clone());
        }
        Ok(sample.embedded)
    };

    record(&state)?;
    let mut last_sampled = 0;
    let status = loop {
        if state.time >= config.max_time {
            break TerminalStatus::Clean;
        }
        if state.step_index >= config.max_steps {
            break TerminalStatus::MaxSteps;
        }
        match step(&state, forcing, config) {
            Ok(next) => state = next,
            Err(err) => {
                let time = state.time;
                break match err {
                    FlowError::BlowUp { .. } => TerminalStatus::BlowUp { time },
                    FlowError::StiffnessCollapse { dt, .. } => {
                        TerminalStatus::StiffnessCollapse { time, dt }
                    }
                    FlowError::Unresolved { product, .. } => {
                        TerminalStatus::Unresolved { time, product }
                    }
                    other => TerminalStatus::Fault {
                        time,
                        message: other.to_string(),
                    },
                };
            }
        }
        if state.step_index % config.monitor_every == 0 {
            last_sampled = state.step_index;
            let embedded = record(&state)?;
            if !embedded && config.stop_on_embeddedness_loss {
                break TerminalStatus::EmbeddednessLost { time: state.time };
            }
        }
    };
    if last_sampled != state.step_index {
        let embedded = record(&state)?;
        if !embedded && status == TerminalStatus::Clean && config.stop_on_embeddedness_loss {
            log::warn!("embeddedness lost by t = {}", state.time);
        }
    }

    Ok(Trajectory {
        forcing: *forcing,
        config: config.clone(),
        admission,
        samples,
        snapshots,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize, r: f64) -> DiscreteCurve {
        DiscreteCurve::from_parametric(n, |t| Point2::from_angle(t) * r).unwrap()
    }

    #[test]
    fn normal_velocity_on_unit_circle() {
        let c = circle(1024, 1.0);
        assert!(normal_velocity(&c, 1.0).unwrap().iter().all(|f| f.abs() < 1e-4));
        assert!(normal_velocity(&c, 0.0)
            .unwrap()
            .iter()
            .all(|f| (f + 1.0).abs() < 1e-4));
    }

    #[test]
    fn cfl_dt_on_circle() {
        let config = StepperConfig {
            cfl: 0.4,
            ..StepperConfig::default()
        };
        let dt = cfl_dt(&circle(256, 1.0), 0.0, &config).unwrap();
        let expected = 0.4 * (std::f64::consts::TAU / 256.0).powi(2);
        assert!((dt - expected).abs() / expected < 1e-4, "{dt} vs {expected}");
        let dt2 = cfl_dt(&circle(512, 1.0), 0.0, &config).unwrap();
        assert!((dt / dt2 - 4.0).abs() < 1e-3);
    }

    #[test]
    fn config_validation() {
        let mut c = StepperConfig::default();
        assert!(c.validate().is_ok());
        c.cfl = 0.6;
        assert!(c.validate().is_err());
        c.cfl = 0.3;
        c.resample_every = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn step_never_overshoots_max_time() {
        let config = StepperConfig {
            n: 64,
            max_time: 1e-5,
            ..StepperConfig::default()
        };
        let state = FlowState::new(circle(64, 1.0), &ForcingSpec::Zero).unwrap();
        let next = step(&state, &ForcingSpec::Zero, &config).unwrap();
        assert_eq!(next.time, 1e-5);
        assert_eq!(next.step_index, 1);
    }

    #[test]
    fn non_embedded_input_is_rejected() {
        let limacon =
            DiscreteCurve::from_parametric(256, |t| Point2::from_angle(t) * (1.0 + 1.5 * t.cos()))
                .unwrap();
        let err = run(&limacon, &ForcingSpec::Zero, &StepperConfig::default()).unwrap_err();
        assert!(matches!(err, FlowError::Admission(CurveError::NotEmbedded(..))));
    }

    #[test]
    fn euler_and_rk2_agree_on_a_short_run() {
        let base = StepperConfig {
            n: 128,
            max_time: 0.01,
            monitor_every: 1000,
            ..StepperConfig::default()
        };
        let euler = StepperConfig {
            scheme: Scheme::ExplicitEuler,
            ..base.clone()
        };
        let a = run(&circle(128, 1.0), &ForcingSpec::Zero, &base).unwrap();
        let b = run(&circle(128, 1.0), &ForcingSpec::Zero, &euler).unwrap();
        let (la, lb) = (a.samples.last().unwrap(), b.samples.last().unwrap());
        assert_eq!(a.status, TerminalStatus::Clean);
        assert!((la.time - 0.01).abs() < 1e-15);
        // Euler is first order: the gap is O(dt) with dt ≈ 1e-3.
        assert!((la.area - lb.area).abs() < 1e-4);
    }
}
