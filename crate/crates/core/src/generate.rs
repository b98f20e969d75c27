// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! Test-curve generators.
//!
//! Smooth families are sampled at equal arc length directly on the analytic
//! curve, so every vertex lies on it. The spiral notch is built as a
//! polygon, smoothed and resampled.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::DiscreteCurve;
use crate::error::CurveError;
use crate::pair::PairTable;
use crate::point::Point2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("generator {generator} has no parameter '{name}' (known: {known})")]
    UnknownParameter {
        generator: GeneratorKind,
        name: String,
        known: String,
    },
    #[error("generator {generator}: {msg}")]
    BadParameter { generator: GeneratorKind, msg: String },
    #[error("generated {generator} curve is not embedded: edges {} and {} intersect", .witness.0, .witness.1)]
    NotEmbedded {
        generator: GeneratorKind,
        witness: (usize, usize),
    },
    #[error("spiral notch could not reach theta_min <= {target:.4} (best {best:.4})")]
    TargetUnreachable { target: f64, best: f64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Circle,
    Ellipse,
    Star,
    Fourier,
    Dumbbell,
    SpiralNotch,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 6] = [
        GeneratorKind::Circle,
        GeneratorKind::Ellipse,
        GeneratorKind::Star,
        GeneratorKind::Fourier,
        GeneratorKind::Dumbbell,
        GeneratorKind::SpiralNotch,
    ];

    /// Parameter names with their defaults.
    pub fn defaults(self) -> &'static [(&'static str, f64)] {
        match self {
            GeneratorKind::Circle => &[("r", 1.0), ("cx", 0.0), ("cy", 0.0)],
            GeneratorKind::Ellipse => &[("a", 2.0), ("b", 1.0)],
            GeneratorKind::Star => &[("r", 1.0), ("epsilon", 0.4), ("m", 5.0)],
            GeneratorKind::Fourier => &[("modes", 5.0), ("amplitude", 0.2)],
            GeneratorKind::Dumbbell => &[("a", 1.0), ("b", 1.02)],
            GeneratorKind::SpiralNotch => &[("width", 0.06), ("target", -1.1 * PI)],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Circle => "circle",
            GeneratorKind::Ellipse => "ellipse",
            GeneratorKind::Star => "star",
            GeneratorKind::Fourier => "fourier",
            GeneratorKind::Dumbbell => "dumbbell",
            GeneratorKind::SpiralNotch => "spiral_notch",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = GenerateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GenerateError::UnknownGenerator(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub params: BTreeMap<String, f64>,
    pub n: usize,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize) -> Self {
        GeneratorSpec {
            kind,
            params: BTreeMap::new(),
            n,
        }
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    /// Every supplied parameter must be known to the generator.
    pub fn validate(&self) -> Result<(), GenerateError> {
        let defaults = self.kind.defaults();
        for name in self.params.keys() {
            if !defaults.iter().any(|(k, _)| k == name) {
                return Err(GenerateError::UnknownParameter {
                    generator: self.kind,
                    name: name.clone(),
                    known: defaults
                        .iter()
                        .map(|(k, _)| *k)
                        .collect::<Vec<_>>()
                        .join(", "),
                });
            }
        }
        Ok(())
    }

    pub fn param(&self, name: &str) -> f64 {
        self.params.get(name).copied().unwrap_or_else(|| {
            self.kind
                .defaults()
                .iter()
                .find(|(k, _)| *k == name)
                .map(|&(_, v)| v)
                .expect("parameter name is one of the generator's defaults")
        })
    }
}

/// A generated curve with its initial total-curvature extrema.
#[derive(Debug, Clone)]
pub struct Generated {
    pub curve: DiscreteCurve,
    pub theta0_min: f64,
    pub theta0_max: f64,
    /// Whether `θ₀ ≥ −π` holds for every pair.
    pub admissible: bool,
}

/// Builds the curve described by `spec`; `seed` only matters for `fourier`.
pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<Generated, GenerateError> {
    spec.validate()?;
    let bad = |msg: String| GenerateError::BadParameter {
        generator: spec.kind,
        msg,
    };
    if spec.n < crate::curve::MIN_VERTICES {
        return Err(bad(format!("n = {} is below 8", spec.n)));
    }
    let n = spec.n;
    let curve = match spec.kind {
        GeneratorKind::Circle => {
            let r = spec.param("r");
            if r <= 0.0 {
                return Err(bad("r must be positive".into()));
            }
            let c = Point2::new(spec.param("cx"), spec.param("cy"));
            DiscreteCurve::from_parametric(n, |t| c + Point2::from_angle(t) * r)?
        }
        GeneratorKind::Ellipse => {
            let (a, b) = (spec.param("a"), spec.param("b"));
            if a <= 0.0 || b <= 0.0 {
                return Err(bad("semi-axes must be positive".into()));
            }
            sample_by_arc_length(n, |t| Point2::new(a * t.cos(), b * t.sin()))?
        }
        GeneratorKind::Star => {
            let (r, eps, m) = (spec.param("r"), spec.param("epsilon"), spec.param("m"));
            if r <= 0.0 || !(0.0..1.0).contains(&eps) || m.fract() != 0.0 || m < 1.0 {
                return Err(bad("need r > 0, 0 <= epsilon < 1 and integer m >= 1".into()));
            }
            sample_by_arc_length(n, |t| Point2::from_angle(t) * (r * (1.0 + eps * (m * t).cos())))?
        }
        GeneratorKind::Fourier => {
            let modes = spec.param("modes");
            let amplitude = spec.param("amplitude");
            if modes.fract() != 0.0 || modes < 2.0 || !(0.0..1.0).contains(&amplitude) {
                return Err(bad("need integer modes >= 2 and 0 <= amplitude < 1".into()));
            }
            let radial = RadialFourier::random(modes as usize, amplitude, seed);
            sample_by_arc_length(n, |t| Point2::from_angle(t) * radial.radius(t))?
        }
        GeneratorKind::Dumbbell => {
            let (a, b) = (spec.param("a"), spec.param("b"));
            if !(a > 0.0 && b > a) {
                return Err(bad("a Cassini oval with one component needs b > a > 0".into()));
            }
            sample_by_arc_length(n, |t| Point2::from_angle(t) * cassini_radius(a, b, t))?
        }
        GeneratorKind::SpiralNotch => {
            let width = spec.param("width");
            if !(width > 0.0 && width < 0.12) {
                return Err(bad("width must lie in (0, 0.12)".into()));
            }
            spiral_notch(n, width, spec.param("target"))?
        }
    };
    if let Some(witness) = curve.self_intersection() {
        return Err(GenerateError::NotEmbedded {
            generator: spec.kind,
            witness,
        });
    }
    let theta = PairTable::new(&curve)?.theta_scan();
    Ok(Generated {
        curve,
        theta0_min: theta.min,
        theta0_max: theta.max,
        admissible: theta.min >= -PI,
    })
}

/// `r(t) = 1 + Σ_{k=2}^{K} (a_k cos kt + b_k sin kt)` with seeded random
/// coefficients decaying like `1/k`.
#[derive(Debug, Clone)]
pub struct RadialFourier {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl RadialFourier {
    pub fn random(modes: usize, amplitude: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cos = Vec::with_capacity(modes - 1);
        let mut sin = Vec::with_capacity(modes - 1);
        for k in 2..=modes {
            let scale = amplitude / k as f64;
            cos.push(scale * rng.random_range(-1.0..1.0));
            sin.push(scale * rng.random_range(-1.0..1.0));
        }
        RadialFourier { cos, sin }
    }

    pub fn radius(&self, t: f64) -> f64 {
        let mut r = 1.0;
        for (idx, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let k = (idx + 2) as f64;
            r += a * (k * t).cos() + b * (k * t).sin();
        }
        r
    }
}

fn cassini_radius(a: f64, b: f64, t: f64) -> f64 {
    let s = (2.0 * t).sin();
    let a2 = a * a;
    (a2 * (2.0 * t).cos() + (b.powi(4) - a2 * a2 * s * s).sqrt()).sqrt()
}

/// Samples the closed curve `f: [0, 2π) → ℝ²` at `n` points equally spaced
/// in arc length, starting at `f(0)`. Arc length is inverted on a dense
/// chord table; vertices lie exactly on the curve.
pub fn sample_by_arc_length(
    n: usize,
    f: impl Fn(f64) -> Point2,
) -> Result<DiscreteCurve, CurveError> {
    let dense = (256 * n).max(16_384);
    let dt = TAU / dense as f64;
    let mut arc = Vec::with_capacity(dense + 1);
    arc.push(0.0);
    let mut prev = f(0.0);
    for k in 1..=dense {
        let p = f(k as f64 * dt);
        arc.push(arc[k - 1] + p.distance(prev));
        prev = p;
    }
    let total = arc[dense];
    let mut vertices = Vec::with_capacity(n);
    let mut seg = 0;
    for j in 0..n {
        let s = total * j as f64 / n as f64;
        while arc[seg + 1] < s {
            seg += 1;
        }
        let frac = (s - arc[seg]) / (arc[seg + 1] - arc[seg]);
        vertices.push(f((seg as f64 + frac) * dt));
    }
    DiscreteCurve::new(vertices)
}

/// A unit disk with a narrow channel cut in from the right that curls by
/// `curl` radians at its inner end. The channel contributes about
/// `−π − curl` of total turning along one of its walls.
fn notch_polygon(width: f64, curl: f64, spacing: f64) -> Vec<Point2> {
    let mut pts = Vec::new();
    let push_segment = |pts: &mut Vec<Point2>, a: Point2, b: Point2| {
        let k = ((a.distance(b) / spacing).ceil() as usize).max(1);
        for i in 0..k {
            pts.push(a.lerp(b, i as f64 / k as f64));
        }
    };

    let entry_x = (1.0 - width * width).sqrt();
    let bend_x = 0.4;
    let bend_radius = 0.3;
    let center = Point2::new(bend_x, bend_radius);
    let centerline = |u: f64| center + Point2::new(-u.sin(), -u.cos()) * bend_radius;
    let direction = |u: f64| Point2::from_angle(PI - u);
    let left = |u: f64| {
        let d = direction(u);
        Point2::new(-d.y, d.x)
    };

    // outer circle, counter-clockwise from the upper wall to the lower wall
    let start = width.asin();
    let sweep = TAU - 2.0 * start;
    let k = (sweep / spacing).ceil() as usize;
    for i in 0..k {
        pts.push(Point2::from_angle(start + sweep * i as f64 / k as f64));
    }
    // lower wall inward
    push_segment(
        &mut pts,
        Point2::new(entry_x, -width),
        Point2::new(bend_x, -width),
    );
    let arc_steps = ((curl * (bend_radius + width) / spacing).ceil() as usize).max(1);
    for i in 0..arc_steps {
        let u = curl * i as f64 / arc_steps as f64;
        pts.push(centerline(u) + left(u) * width);
    }
    // end cap, turning by −π
    let cap_steps = ((PI * width / spacing).ceil() as usize).max(4);
    let (c, d, nl) = (centerline(curl), direction(curl), left(curl));
    for i in 0..cap_steps {
        let a = PI * i as f64 / cap_steps as f64;
        pts.push(c + (nl * a.cos() + d * a.sin()) * width);
    }
    // upper wall outward
    for i in 0..arc_steps {
        let u = curl * (arc_steps - i) as f64 / arc_steps as f64;
        pts.push(centerline(u) - left(u) * width);
    }
    push_segment(
        &mut pts,
        Point2::new(bend_x, width),
        Point2::new(entry_x, width),
    );
    pts
}

/// Periodic Gaussian smoothing of an equally spaced closed polygon.
fn smooth_closed(points: &[Point2], sigma_in_samples: f64) -> Vec<Point2> {
    let n = points.len() as isize;
    let half = (3.0 * sigma_in_samples).ceil() as isize;
    let weights: Vec<f64> = (-half..=half)
        .map(|k| (-0.5 * (k as f64 / sigma_in_samples).powi(2)).exp())
        .collect();
    let norm: f64 = weights.iter().sum();
    (0..n)
        .map(|i| {
            let mut acc = Point2::ZERO;
            for (w, k) in weights.iter().zip(-half..=half) {
                acc += points[(i + k).rem_euclid(n) as usize] * *w;
            }
            acc * (1.0 / norm)
        })
        .collect()
}

fn spiral_notch(n: usize, width: f64, target: f64) -> Result<DiscreteCurve, GenerateError> {
    let dense_n = (16 * n).max(8192);
    let spacing = 9.0 / dense_n as f64;
    let mut best = f64::INFINITY;
    let mut curl = 0.05 * PI;
    while curl <= 0.95 * PI {
        let raw = DiscreteCurve::new(notch_polygon(width, curl, spacing))?;
        let even = raw.resample_uniform(dense_n)?;
        let h = even.total_length() / dense_n as f64;
        let smooth = DiscreteCurve::new(smooth_closed(even.vertices(), 0.4 * width / h))?;
        let curve = smooth.resample_uniform(n)?;
        let theta_min = PairTable::new(&curve)?.theta_scan().min;
        best = best.min(theta_min);
        if theta_min <= target {
            return Ok(curve);
        }
        curl += 0.05 * PI;
    }
    Err(GenerateError::TargetUnreachable { target, best })
}
