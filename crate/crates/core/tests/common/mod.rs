// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent oracles shared by the integration tests. Nothing here calls
//! into the crate's geometry code.

#![allow(dead_code)]

use std::f64::consts::TAU;

use chordarc::{DiscreteCurve, Point2};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 48)
}

/// Perimeter of the ellipse `(a cos t, b sin t)`.
pub fn ellipse_perimeter(a: f64, b: f64) -> f64 {
    integrate(
        &|t: f64| (a * a * t.sin().powi(2) + b * b * t.cos().powi(2)).sqrt(),
        0.0,
        TAU,
        1e-13,
    )
}

/// `∮ κ² ds` of the ellipse `(a cos t, b sin t)`.
pub fn ellipse_kappa_sq_integral(a: f64, b: f64) -> f64 {
    integrate(
        &|t: f64| {
            let speed2 = a * a * t.sin().powi(2) + b * b * t.cos().powi(2);
            // κ = ab / speed³, ds = speed dt
            (a * b).powi(2) / speed2.powf(2.5)
        },
        0.0,
        TAU,
        1e-12,
    )
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test by orientation signs.
pub fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// All pairs `(i, j)`, `i < j`, of non-adjacent edges that meet.
pub fn brute_force_crossings(vertices: &[Point2]) -> Vec<(usize, usize)> {
    let n = vertices.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            let (c, d) = (vertices[j], vertices[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Exterior angle at every vertex by direct `atan2` of consecutive edges.
pub fn turning_angles(vertices: &[Point2]) -> Vec<f64> {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let a = vertices[i] - vertices[(i + n - 1) % n];
            let b = vertices[(i + 1) % n] - vertices[i];
            (a.x * b.y - a.y * b.x).atan2(a.x * b.x + a.y * b.y)
        })
        .collect()
}

/// θ(i→j) by summing turning angles along the forward arc.
pub fn theta_direct(phi: &[f64], i: usize, j: usize) -> f64 {
    let n = phi.len();
    let mut sum = 0.5 * phi[i] + 0.5 * phi[j];
    let mut k = (i + 1) % n;
    while k != j {
        sum += phi[k];
        k = (k + 1) % n;
    }
    sum
}

/// Complex Fourier curve `z(t) = e^{it} + Σ_{k≠1} c_k e^{ikt}`, `|k| ≤ modes`,
/// with random coefficients of size up to `amplitude / |k|`.
pub fn random_fourier_curve(seed: u64, modes: i32, amplitude: f64, n: usize) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<(i32, f64, f64)> = (-modes..=modes)
        .filter(|&k| k != 1 && k != 0)
        .map(|k| {
            let scale = amplitude / (k.abs() as f64);
            (
                k,
                scale * rng.random_range(-1.0..1.0),
                scale * rng.random_range(-1.0..1.0),
            )
        })
        .collect();
    (0..n)
        .map(|s| {
            let t = TAU * s as f64 / n as f64;
            let mut p = Point2::from_angle(t);
            for &(k, re, im) in &coeffs {
                let (c, sn) = ((k as f64 * t).cos(), (k as f64 * t).sin());
                p += Point2::new(re * c - im * sn, re * sn + im * c);
            }
            p
        })
        .collect()
}

pub fn circle(n: usize, r: f64) -> DiscreteCurve {
    DiscreteCurve::from_parametric(n, |t| Point2::from_angle(t) * r).unwrap()
}

pub fn ellipse(n: usize, a: f64, b: f64) -> DiscreteCurve {
    DiscreteCurve::from_parametric(n, |t| Point2::new(a * t.cos(), b * t.sin())).unwrap()
}
