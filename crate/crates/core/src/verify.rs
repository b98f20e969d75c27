// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! Checks of the monotonicity and chord-arc claims along a trajectory.
//!
//! Every check reduces to a per-sample `margin` that is nonnegative when the
//! claim holds exactly, and a per-sample `tolerance`. A check fails when some
//! sample has `margin < −tolerance`; the reported sample is the one with the
//! least slack `margin + tolerance`. Checks whose hypothesis is never active
//! report `INCONCLUSIVE`, never `PASS`.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::DiscreteCurve;
use crate::error::CurveError;
use crate::flow::{MonitorSample, Trajectory};
use crate::forcing::{Conserved, ForcingSpec};
use crate::frames::LocalGeometry;

/// `θ_min` below this counts as negative for the monotonicity check.
pub const THETA_ACTIVE_TOL: f64 = 0.05;
/// Allowed decrease of `θ_min` between consecutive samples.
pub const THETA_MONO_TOL: f64 = 1e-3;
/// Minimum number of samples for the monotonicity check.
pub const MIN_MONOTONE_SAMPLES: usize = 10;
/// Relative slack on the chord-arc lower bound.
pub const RATIO_SLACK: f64 = 0.05;
/// Allowed per-sample decrease of `ratio_min` for convex curve shortening.
pub const RATIO_MONO_TOL: f64 = 1e-3;
/// Relative drift allowed for a conserved area or length.
pub const CONSERVATION_TOL: f64 = 1e-4;
/// Median residual over median `|Δθ|` accepted by the heat check.
pub const HEAT_RELATIVE_TOL: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("the heat check needs at least {need} snapshots aligned with the samples, got {have}")]
    InsufficientSnapshots { have: usize, need: usize },
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckId {
    HNonneg,
    ThetaRange,
    ThetaMinMonotone,
    ThetaHeat,
    #[serde(rename = "LEMMA21_DUALITY")]
    Lemma21Duality,
    RatioLowerBound,
    RatioLiminfAtMin,
    Embeddedness,
    Conservation,
}

impl CheckId {
    pub const ALL: [CheckId; 9] = [
        CheckId::HNonneg,
        CheckId::ThetaRange,
        CheckId::ThetaMinMonotone,
        CheckId::ThetaHeat,
        CheckId::Lemma21Duality,
        CheckId::RatioLowerBound,
        CheckId::RatioLiminfAtMin,
        CheckId::Embeddedness,
        CheckId::Conservation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::HNonneg => "H_NONNEG",
            CheckId::ThetaRange => "THETA_RANGE",
            CheckId::ThetaMinMonotone => "THETA_MIN_MONOTONE",
            CheckId::ThetaHeat => "THETA_HEAT",
            CheckId::Lemma21Duality => "LEMMA21_DUALITY",
            CheckId::RatioLowerBound => "RATIO_LOWER_BOUND",
            CheckId::RatioLiminfAtMin => "RATIO_LIMINF_AT_MIN",
            CheckId::Embeddedness => "EMBEDDEDNESS",
            CheckId::Conservation => "CONSERVATION",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| VerifyError::UnknownCheck(s.to_string()))
    }
}

/// The set of enabled checks, iterated in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCatalog {
    enabled: BTreeSet<CheckId>,
}

impl TheoremCatalog {
    pub fn all() -> Self {
        TheoremCatalog {
            enabled: CheckId::ALL.into_iter().collect(),
        }
    }

    pub fn only<I: IntoIterator<Item = CheckId>>(ids: I) -> Self {
        TheoremCatalog {
            enabled: ids.into_iter().collect(),
        }
    }

    pub fn contains(&self, id: CheckId) -> bool {
        self.enabled.contains(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = CheckId> + '_ {
        self.enabled.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.enabled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.enabled.is_empty()
    }
}

impl Default for TheoremCatalog {
    fn default() -> Self {
        Self::all()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: CheckId,
    pub status: CheckStatus,
    pub margin: f64,
    pub worst_time: f64,
    pub worst_pair: Option<(usize, usize)>,
    /// Sample index of the worst time; snapshot files use the same index.
    pub worst_sample: Option<usize>,
    pub tolerance_used: f64,
    pub note: String,
}

impl CheckResult {
    fn inconclusive(name: CheckId, note: impl Into<String>) -> Self {
        CheckResult {
            name,
            status: CheckStatus::Inconclusive,
            margin: 0.0,
            worst_time: 0.0,
            worst_pair: None,
            worst_sample: None,
            tolerance_used: 0.0,
            note: note.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonitorReport {
    pub checks: Vec<CheckResult>,
}

impl MonitorReport {
    pub fn get(&self, id: CheckId) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == id)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are finite")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// One sample's contribution to a check.
#[derive(Debug, Clone, Copy)]
struct Observation {
    sample: usize,
    margin: f64,
    tolerance: f64,
    pair: Option<(usize, usize)>,
}

/// Folds observations into a PASS/FAIL result at the least-slack sample.
fn judge(
    name: CheckId,
    samples: &[MonitorSample],
    observations: impl IntoIterator<Item = Observation>,
    note: impl Into<String>,
) -> CheckResult {
    let worst = observations
        .into_iter()
        .filter(|o| o.margin.is_finite())
        .min_by(|a, b| {
            (a.margin + a.tolerance)
                .total_cmp(&(b.margin + b.tolerance))
                .then(a.sample.cmp(&b.sample))
        });
    let Some(w) = worst else {
        return CheckResult::inconclusive(name, "no usable samples");
    };
    CheckResult {
        name,
        status: if w.margin < -w.tolerance {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        },
        margin: w.margin,
        worst_time: samples[w.sample].time,
        worst_pair: w.pair,
        worst_sample: Some(w.sample),
        tolerance_used: w.tolerance,
        note: note.into(),
    }
}

fn turning_tolerance(floor: f64, s: &MonitorSample) -> f64 {
    floor.max(3.0 * s.max_turning)
}

/// `h(t) ≥ 0` at every sample.
pub fn check_h_nonneg(traj: &Trajectory) -> CheckResult {
    let obs = traj.samples.iter().enumerate().map(|(k, s)| Observation {
        sample: k,
        margin: s.h,
        tolerance: 0.0,
        pair: None,
    });
    judge(CheckId::HNonneg, &traj.samples, obs, "")
}

/// `θ ∈ (−π, 3π)` at every sample, up to `max(0.05, 3·max turning)`.
pub fn check_theta_range(traj: &Trajectory) -> CheckResult {
    if !traj.admission.admissible {
        let mut r = judge(CheckId::ThetaRange, &traj.samples, theta_range_obs(traj), "");
        r.status = CheckStatus::Inconclusive;
        r.note = format!(
            "initial curve outside hypothesis (theta0_min = {:.4}); measured margin recorded only",
            traj.admission.theta0_min
        );
        return r;
    }
    judge(CheckId::ThetaRange, &traj.samples, theta_range_obs(traj), "")
}

fn theta_range_obs(traj: &Trajectory) -> impl Iterator<Item = Observation> + '_ {
    traj.samples.iter().enumerate().map(|(k, s)| {
        let lower = s.theta_min + PI;
        let upper = 3.0 * PI - s.theta_max;
        let (margin, pair) = if lower <= upper {
            (lower, s.theta_argmin)
        } else {
            (upper, s.theta_argmax)
        };
        Observation {
            sample: k,
            margin,
            tolerance: turning_tolerance(0.05, s),
            pair: Some(pair),
        }
    })
}

/// While `θ_min < −0.05`, it may not drop by more than `1e−3` per sample.
pub fn check_theta_min_monotone(traj: &Trajectory) -> CheckResult {
    let id = CheckId::ThetaMinMonotone;
    let s = &traj.samples;
    if s.len() < MIN_MONOTONE_SAMPLES {
        return CheckResult::inconclusive(
            id,
            format!("{} samples, need {MIN_MONOTONE_SAMPLES}", s.len()),
        );
    }
    let obs: Vec<Observation> = s
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].theta_min < -THETA_ACTIVE_TOL)
        .map(|(k, w)| Observation {
            sample: k + 1,
            margin: w[1].theta_min - w[0].theta_min,
            tolerance: THETA_MONO_TOL,
            pair: Some(w[1].theta_argmin),
        })
        .collect();
    if obs.is_empty() {
        return CheckResult::inconclusive(id, "theta_min never negative; hypothesis inactive");
    }
    let active = obs.len();
    judge(id, s, obs, format!("{active} active intervals"))
}

/// `θ_max + θ_min = 2π` at every sample, up to `max(1e−2, 3·max turning)`.
pub fn check_duality(traj: &Trajectory) -> CheckResult {
    let obs = traj.samples.iter().enumerate().map(|(k, s)| Observation {
        sample: k,
        margin: -(s.theta_max + s.theta_min - TAU).abs(),
        tolerance: turning_tolerance(1e-2, s),
        pair: Some(s.theta_argmin),
    });
    judge(CheckId::Lemma21Duality, &traj.samples, obs, "")
}

/// `ratio_min` stays above `0.95·r₀`, with `r₀` the minimum over the first
/// tenth of the samples. A drop below that is a failure only when the ratio
/// has halved and is still falling at the end; otherwise it is inconclusive.
pub fn check_ratio_lower_bound(traj: &Trajectory) -> CheckResult {
    let id = CheckId::RatioLowerBound;
    let s = &traj.samples;
    if s.is_empty() {
        return CheckResult::inconclusive(id, "no samples");
    }
    let head = s.len().div_ceil(10).max(1);
    let r0 = s[..head]
        .iter()
        .map(|x| x.ratio_min)
        .fold(f64::INFINITY, f64::min);
    let tolerance = RATIO_SLACK * r0;
    let obs = s.iter().enumerate().map(|(k, x)| Observation {
        sample: k,
        margin: x.ratio_min - r0,
        tolerance,
        pair: Some(x.argmin),
    });
    let mut result = judge(id, s, obs, format!("reference ratio {r0:.6} over {head} samples"));

    if !traj.admission.admissible {
        result.status = CheckStatus::Inconclusive;
        result.note = "initial curve outside hypothesis; measured margin recorded only".into();
        return result;
    }
    if result.status == CheckStatus::Fail {
        let last = s.len() - 1;
        let collapsing = s[last].ratio_min < 0.5 * s[0].ratio_min
            && last >= 2
            && s[last].ratio_min < s[last - 1].ratio_min
            && s[last - 1].ratio_min < s[last - 2].ratio_min;
        if !collapsing {
            result.status = CheckStatus::Inconclusive;
            result.note = format!("{}; dipped below the bound without collapsing", result.note);
        }
        return result;
    }

    // Convex curve shortening: the ratio is nondecreasing.
    if traj.forcing == ForcingSpec::Zero && traj.admission.theta0_min >= 0.0 && s.len() >= 2 {
        let worst = s
            .windows(2)
            .enumerate()
            .map(|(k, w)| (k + 1, w[1].ratio_min - w[0].ratio_min))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("at least one window");
        if worst.1 < -RATIO_MONO_TOL {
            return CheckResult {
                name: id,
                status: CheckStatus::Fail,
                margin: worst.1,
                worst_time: s[worst.0].time,
                worst_pair: Some(s[worst.0].argmin),
                worst_sample: Some(worst.0),
                tolerance_used: RATIO_MONO_TOL,
                note: "convex curve shortening: ratio_min decreased".into(),
            };
        }
        result.note = format!("{}; convex monotone within {RATIO_MONO_TOL:e}", result.note);
    }
    result
}

/// First- and second-variation conditions at the argmin pair of every sample,
/// each within `10·L/N`.
pub fn check_minimizer_identities(traj: &Trajectory) -> CheckResult {
    let obs = traj.samples.iter().enumerate().map(|(k, s)| Observation {
        sample: k,
        margin: (-s.first_variation).min(s.second_variation),
        tolerance: 10.0 * s.length / s.n as f64,
        pair: Some(s.argmin),
    });
    let mut r = judge(CheckId::RatioLiminfAtMin, &traj.samples, obs, "");
    let excess = traj
        .samples
        .iter()
        .filter_map(|s| s.half_theta_excess)
        .fold(f64::INFINITY, f64::min);
    if excess.is_finite() {
        r.note = format!("min theta/2 - pi*l/L at case I minimizers: {excess:.4e}");
    }
    r
}

/// Every sample is embedded.
pub fn check_embeddedness(traj: &Trajectory) -> CheckResult {
    let s = &traj.samples;
    if s.is_empty() {
        return CheckResult::inconclusive(CheckId::Embeddedness, "no samples");
    }
    let bad: Vec<usize> = (0..s.len()).filter(|&k| !s[k].embedded).collect();
    let (status, worst) = match bad.first() {
        Some(&k) => (CheckStatus::Fail, k),
        None => (CheckStatus::Pass, s.len() - 1),
    };
    CheckResult {
        name: CheckId::Embeddedness,
        status,
        margin: -(bad.len() as f64),
        worst_time: s[worst].time,
        worst_pair: bad.first().map(|&k| s[k].argmin),
        worst_sample: Some(worst),
        tolerance_used: 0.0,
        note: format!("{} of {} samples self-intersecting", bad.len(), s.len()),
    }
}

/// Relative drift of the conserved quantity, when the forcing has one.
pub fn check_conservation(traj: &Trajectory) -> CheckResult {
    let id = CheckId::Conservation;
    let Some(kind) = traj.forcing.conserved() else {
        return CheckResult::inconclusive(id, format!("forcing {} conserves nothing", traj.forcing));
    };
    let value = |s: &MonitorSample| match kind {
        Conserved::Area => s.area,
        Conserved::Length => s.length,
    };
    let Some(first) = traj.samples.first() else {
        return CheckResult::inconclusive(id, "no samples");
    };
    let v0 = value(first);
    let obs = traj.samples.iter().enumerate().map(|(k, s)| Observation {
        sample: k,
        margin: -((value(s) - v0) / v0).abs(),
        tolerance: CONSERVATION_TOL,
        pair: None,
    });
    let label = match kind {
        Conserved::Area => "area",
        Conserved::Length => "length",
    };
    judge(id, &traj.samples, obs, format!("relative {label} drift"))
}

/// Pairs tracked by the heat check: starts at sixteenths of the length,
/// separations `l/L ∈ {0.1, …, 0.5}`.
const HEAT_STARTS: usize = 16;
const HEAT_SEPARATIONS: [f64; 5] = [0.1, 0.2, 0.3, 0.4, 0.5];
/// Spatial stencil half-width in mesh edges.
const HEAT_STENCIL: f64 = 8.0;

/// Residual of `(∂_t − Δ)θ = 0` for pairs at fixed arc-length fractions.
///
/// The curve moves normally, so a point at a fixed fraction `σ` slides
/// along the curve relative to material points. With `G(s) = ∫₀ˢ κ(h−κ) ds`
/// and `L' = G(L)`, a material point at fraction `σ` moves to fraction
/// `σ + (G − σL')/L · dt`, and since `∂_sθ = κ` at the endpoint,
/// `dθ/dt|_σ = ∂_tθ|_material + κ_q(σ_q L' − G_q) − κ_p(σ_p L' − G_p)`.
/// The check subtracts that transport term before comparing with `Δθ`.
/// Vertex 0 is material across resampling, which anchors the fractions.
pub fn check_theta_heat(traj: &Trajectory) -> Result<CheckResult, VerifyError> {
    let id = CheckId::ThetaHeat;
    let (samples, snaps) = (&traj.samples, &traj.snapshots);
    if snaps.len() < 3 || snaps.len() != samples.len() {
        return Err(VerifyError::InsufficientSnapshots {
            have: snaps.len(),
            need: 3.max(samples.len()),
        });
    }
    let profiles = snaps
        .iter()
        .zip(samples)
        .map(|(c, s)| FractionProfile::new(c, s.h))
        .collect::<Result<Vec<_>, _>>()?;

    let mut residuals = Vec::new();
    let mut laplacians = Vec::new();
    let mut worst: Option<(f64, usize)> = None;
    for k in 1..profiles.len() - 1 {
        let (t0, t1, t2) = (samples[k - 1].time, samples[k].time, samples[k + 1].time);
        let (a, b) = (t1 - t0, t2 - t1);
        if !(a > 0.0 && b > 0.0) {
            continue;
        }
        // Second-order weights for a derivative at t1 on a nonuniform grid.
        let (w0, w1, w2) = (-b / (a * (a + b)), (b - a) / (a * b), a / (b * (a + b)));
        let mid = &profiles[k];
        let delta = HEAT_STENCIL / mid.n as f64;
        let inv_ds2 = 1.0 / (delta * mid.length).powi(2);
        for start in 0..HEAT_STARTS {
            let sp = start as f64 / HEAT_STARTS as f64;
            for &sep in &HEAT_SEPARATIONS {
                let sq = sp + sep;
                let dtheta = w0 * profiles[k - 1].theta(sp, sq)
                    + w1 * mid.theta(sp, sq)
                    + w2 * profiles[k + 1].theta(sp, sq);
                let center = mid.theta(sp, sq);
                let lap = (mid.theta(sp, sq + delta) - 2.0 * center + mid.theta(sp, sq - delta)
                    + mid.theta(sp + delta, sq)
                    - 2.0 * center
                    + mid.theta(sp - delta, sq))
                    * inv_ds2;
                let transport = mid.transport(sq) - mid.transport(sp);
                let residual = (dtheta - transport - lap).abs();
                if worst.map_or(true, |(r, _)| residual > r) {
                    worst = Some((residual, k));
                }
                residuals.push(residual);
                laplacians.push(lap.abs());
            }
        }
    }
    if residuals.is_empty() {
        return Ok(CheckResult::inconclusive(id, "no usable snapshot triples"));
    }
    let med_res = median(&mut residuals);
    let med_lap = median(&mut laplacians);
    let length = samples[0].length;
    let noise_floor = 1e-4 * TAU / (length * length);
    let (_, worst_k) = worst.expect("residuals is nonempty");
    if med_lap < noise_floor {
        let mut r = CheckResult::inconclusive(
            id,
            format!("median |laplacian| {med_lap:.3e} below noise floor {noise_floor:.3e}"),
        );
        r.worst_time = samples[worst_k].time;
        r.worst_sample = Some(worst_k);
        r.tolerance_used = HEAT_RELATIVE_TOL;
        return Ok(r);
    }
    let relative = med_res / med_lap;
    Ok(CheckResult {
        name: id,
        status: if relative > HEAT_RELATIVE_TOL {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        },
        margin: -relative,
        worst_time: samples[worst_k].time,
        worst_pair: None,
        worst_sample: Some(worst_k),
        tolerance_used: HEAT_RELATIVE_TOL,
        note: format!(
            "relative residual {relative:.4} over {} pair evaluations",
            residuals.len()
        ),
    })
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Cumulative turning, curvature and normal-motion stretching of a curve,
/// indexed by arc-length fraction from vertex 0.
struct FractionProfile {
    n: usize,
    length: f64,
    total_turning: f64,
    /// Fraction of vertex `i`, with a closing entry `1.0`.
    fraction: Vec<f64>,
    /// Turning up to and including half of vertex `i`.
    turning: Vec<f64>,
    /// `σ_i·L' − G_i` at each vertex, multiplied by `κ_i`.
    transport: Vec<f64>,
}

impl FractionProfile {
    fn new(curve: &DiscreteCurve, h: f64) -> Result<Self, CurveError> {
        let g = LocalGeometry::new(curve)?;
        let n = curve.len();
        let arc = curve.cumulative_arc_length();
        let length = arc[n];
        let fraction: Vec<f64> = arc.iter().map(|s| s / length).collect();
        let mut turning = Vec::with_capacity(n);
        let mut before = 0.0;
        for &phi in &g.turning {
            turning.push(before + 0.5 * phi);
            before += phi;
        }
        let curvature: Vec<f64> = g.curvature().collect();
        // G at vertex i integrates κ(h − κ) over the dual cells before it,
        // plus half of cell i.
        let mut stretch = Vec::with_capacity(n);
        let mut acc = 0.0;
        for i in 0..n {
            let cell = curvature[i] * (h - curvature[i]) * g.dual_lengths[i];
            stretch.push(acc + 0.5 * cell);
            acc += cell;
        }
        let total_stretch = acc;
        let transport = (0..n)
            .map(|i| curvature[i] * (fraction[i] * total_stretch - stretch[i]))
            .collect();
        Ok(FractionProfile {
            n,
            length,
            total_turning: before,
            fraction,
            turning,
            transport,
        })
    }

    /// Locates fraction `f ∈ [0, 1)` as edge `i` and weight `u` toward `i+1`.
    fn locate(&self, f: f64) -> (usize, f64) {
        let i = self.fraction.partition_point(|&x| x <= f).saturating_sub(1).min(self.n - 1);
        let span = self.fraction[i + 1] - self.fraction[i];
        (i, ((f - self.fraction[i]) / span).clamp(0.0, 1.0))
    }

    fn interpolate(&self, values: &[f64], f: f64, closing: f64) -> f64 {
        let (i, u) = self.locate(f);
        let next = if i + 1 == self.n {
            values[0] + closing
        } else {
            values[i + 1]
        };
        values[i] + u * (next - values[i])
    }

    /// Cumulative turning at fraction `f`, extended so that `Q(f+1) = Q(f) + total`.
    fn cumulative(&self, f: f64) -> f64 {
        let wraps = f.floor();
        self.interpolate(&self.turning, f - wraps, self.total_turning)
            + wraps * self.total_turning
    }

    fn theta(&self, sp: f64, sq: f64) -> f64 {
        self.cumulative(sq) - self.cumulative(sp)
    }

    fn transport(&self, f: f64) -> f64 {
        self.interpolate(&self.transport, f.rem_euclid(1.0), 0.0)
    }
}

/// Runs every enabled check. A heat check without snapshots is reported as
/// inconclusive with the reason.
pub fn verify(traj: &Trajectory, catalog: &TheoremCatalog) -> MonitorReport {
    let checks = catalog
        .iter()
        .map(|id| match id {
            CheckId::HNonneg => check_h_nonneg(traj),
            CheckId::ThetaRange => check_theta_range(traj),
            CheckId::ThetaMinMonotone => check_theta_min_monotone(traj),
            CheckId::ThetaHeat => check_theta_heat(traj)
                .unwrap_or_else(|e| CheckResult::inconclusive(id, e.to_string())),
            CheckId::Lemma21Duality => check_duality(traj),
            CheckId::RatioLowerBound => check_ratio_lower_bound(traj),
            CheckId::RatioLiminfAtMin => check_minimizer_identities(traj),
            CheckId::Embeddedness => check_embeddedness(traj),
            CheckId::Conservation => check_conservation(traj),
        })
        .collect();
    MonitorReport { checks }
}

/// Fixed-width table, one line per check.
pub fn render_report(report: &MonitorReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:<12} {:>12} {:>11} {:>12} {:>13}  note",
        "check", "status", "margin", "tolerance", "worst_time", "worst_pair"
    );
    for c in &report.checks {
        let pair = c
            .worst_pair
            .map_or_else(|| "-".to_string(), |(i, j)| format!("({i},{j})"));
        let _ = writeln!(
            out,
            "{:<20} {:<12} {:>12.4e} {:>11.3e} {:>12.6} {:>13}  {}",
            c.name.name(),
            c.status.to_string(),
            c.margin,
            c.tolerance_used,
            c.worst_time,
            pair,
            c.note
        );
    }
    out
}
