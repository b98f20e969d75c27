// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use std::f64::consts::{PI, TAU};

use approx::assert_relative_eq;
use chordarc::frames::{turning_angles, vertex_frames};
use chordarc::{CurveError, DiscreteCurve, Orientation, Point2};
use common::{brute_force_crossings, circle, ellipse, ellipse_perimeter, random_fourier_curve};

fn unit_square() -> DiscreteCurve {
    // Corners plus edge midpoints: the smallest admissible square.
    DiscreteCurve::from_xy([
        (0.0, 0.0),
        (0.5, 0.0),
        (1.0, 0.0),
        (1.0, 0.5),
        (1.0, 1.0),
        (0.5, 1.0),
        (0.0, 1.0),
        (0.0, 0.5),
    ])
    .unwrap()
}

#[test]
fn square_length_and_area() {
    let square = unit_square();
    assert_eq!(square.enclosed_area(), 1.0);
    assert_eq!(square.reversed().enclosed_area(), -1.0);
    assert_eq!(square.reversed().orientation(), Orientation::Negative);
    let fine = square.resample_uniform(1024).unwrap();
    assert!((fine.total_length() - 4.0).abs() < 1e-9);
}

#[test]
fn inscribed_circle_length_and_area() {
    let c = circle(2048, 1.0);
    let gap = TAU - c.total_length();
    assert!(gap > 0.0 && gap < 1e-4, "gap {gap}");
    let inscribed = 0.5 * 2048.0 * (TAU / 2048.0).sin();
    assert!((c.enclosed_area() - inscribed).abs() < 1e-12);
    assert!((c.enclosed_area() - PI).abs() < 1e-5);

    // O(N⁻²): doubling N quarters the gap.
    let coarse = TAU - circle(1024, 1.0).total_length();
    assert!((coarse / gap - 4.0).abs() < 0.01);
}

#[test]
fn ellipse_perimeter_matches_quadrature() {
    let oracle = ellipse_perimeter(2.0, 1.0);
    assert!((oracle - 9.688448).abs() < 1e-6, "oracle {oracle}");
    let l = ellipse(4096, 2.0, 1.0).total_length();
    assert!((l - oracle).abs() < 1e-4);
}

#[test]
fn circle_curvature_and_normal_convention() {
    let frames = vertex_frames(&circle(1024, 2.0)).unwrap();
    for f in &frames {
        assert!((f.curvature - 0.5).abs() < 1e-4);
        assert_eq!(f.normal, Point2::new(f.tangent.y, -f.tangent.x));
        assert!((f.tangent.norm() - 1.0).abs() < 1e-12);
        assert!((f.normal.norm() - 1.0).abs() < 1e-12);
    }
    // ν points away from the centre for a positively oriented circle.
    let c = circle(1024, 2.0);
    for (p, f) in c.vertices().iter().zip(&frames) {
        assert!(p.dot(f.normal) > 0.0);
    }
}

#[test]
fn circle_curvature_converges_at_second_order() {
    for r in [0.5, 1.0, 3.0] {
        let mut errors = Vec::new();
        for n in [64, 128, 256] {
            let bound = 2.0 * (TAU / n as f64).powi(2) / r;
            let err = vertex_frames(&circle(n, r))
                .unwrap()
                .iter()
                .map(|f| (f.curvature - 1.0 / r).abs())
                .fold(0.0, f64::max);
            assert!(err < bound, "r={r} n={n}: {err} >= {bound}");
            errors.push(err);
        }
        for w in errors.windows(2) {
            assert!(w[1] < 0.3 * w[0], "r={r}: {errors:?}");
        }
    }
}

#[test]
fn total_curvature_is_two_pi() {
    let geom = chordarc::LocalGeometry::new(&circle(1000, 1.0)).unwrap();
    let sum: f64 = geom.curvature().zip(&geom.dual_lengths).map(|(k, ds)| k * ds).sum();
    assert!((sum - TAU).abs() < 1e-6);
    for seed in 0..10 {
        let v = random_fourier_curve(seed, 4, 0.05, 400);
        let c = DiscreteCurve::new(v).unwrap();
        assert!(c.is_embedded());
        let g = chordarc::LocalGeometry::new(&c).unwrap();
        assert!((g.total_curvature() - TAU).abs() < 1e-10);
    }
}

#[test]
fn ellipse_tip_curvature() {
    // Vertex 0 sits at (2, 0); analytic κ = a/b² there.
    let frames = vertex_frames(&ellipse(4096, 2.0, 1.0)).unwrap();
    assert!((frames[0].curvature - 2.0).abs() < 1e-2);
}

#[test]
fn turning_angle_examples() {
    let hexagon = DiscreteCurve::from_parametric(6, Point2::from_angle);
    // Six vertices are below the admissible minimum.
    assert!(hexagon.is_err());
    let hexagon: Vec<Point2> = (0..6).map(|k| Point2::from_angle(k as f64 * PI / 3.0)).collect();
    for phi in common::turning_angles(&hexagon) {
        assert!((phi - PI / 3.0).abs() < 1e-12);
    }

    let phi = turning_angles(&circle(360, 1.0)).unwrap();
    for &a in &phi {
        assert!((a - TAU / 360.0).abs() < 1e-12);
    }
    let reversed = turning_angles(&circle(360, 1.0).reversed()).unwrap();
    assert!((reversed.iter().sum::<f64>() + TAU).abs() < 1e-10);
}

#[test]
fn turning_angles_agree_with_direct_atan2() {
    let v = random_fourier_curve(3, 5, 0.08, 300);
    let c = DiscreteCurve::new(v.clone()).unwrap();
    let mine = turning_angles(&c).unwrap();
    for (a, b) in mine.iter().zip(common::turning_angles(&v)) {
        assert!((a - b).abs() < 1e-14);
        assert!(a.abs() < PI);
    }
}

#[test]
fn cusp_and_degenerate_edges_are_rejected() {
    let mut v: Vec<Point2> = (0..16).map(|k| Point2::from_angle(k as f64 * TAU / 16.0)).collect();
    v[5] = v[4];
    assert_eq!(DiscreteCurve::new(v.clone()), Err(CurveError::ZeroEdge { index: 4 }));
    v[5] = v[4] + Point2::new(1e-16, 0.0);
    let err = vertex_frames(&DiscreteCurve::new(v).unwrap());
    assert!(matches!(err, Err(CurveError::DegenerateEdge { index: 4, .. })), "{err:?}");

    let spike = DiscreteCurve::from_xy([
        (0.0, 0.0),
        (1.0, 0.0),
        (2.0, 0.0),
        (1.5, 0.0),
        (1.0, 1.0),
        (0.8, 1.0),
        (0.5, 1.0),
        (0.2, 1.0),
    ]);
    let err = spike.and_then(|c| turning_angles(&c));
    assert!(matches!(err, Err(CurveError::Cusp { index: 2 })), "{err:?}");
}

#[test]
fn resample_square_positions() {
    let s = unit_square().resample_uniform(8).unwrap();
    let expected = [
        (0.0, 0.0),
        (0.5, 0.0),
        (1.0, 0.0),
        (1.0, 0.5),
        (1.0, 1.0),
        (0.5, 1.0),
        (0.0, 1.0),
        (0.0, 0.5),
    ];
    for (p, e) in s.vertices().iter().zip(expected) {
        assert!((p.x - e.0).abs() < 1e-15 && (p.y - e.1).abs() < 1e-15, "{p:?}");
    }
    assert_eq!(s.total_length(), 4.0);
}

#[test]
fn resample_is_idempotent_on_uniform_curves() {
    let c = circle(500, 1.3);
    let again = c.resample_uniform(500).unwrap();
    for (a, b) in c.vertices().iter().zip(again.vertices()) {
        assert!(a.distance(*b) < 1e-12);
    }
}

#[test]
fn resampled_ellipse_has_equal_arc_spacing() {
    let dense = ellipse(8192, 2.0, 1.0);
    let r = dense.resample_uniform(512).unwrap();
    // Arc positions measured along the input polygon by projection onto its edges.
    let arc = dense.cumulative_arc_length();
    let total = dense.total_length();
    let v = dense.vertices();
    let n = v.len();
    for (k, p) in r.vertices().iter().enumerate() {
        let target = total * k as f64 / 512.0;
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            let e = b - a;
            let t = ((*p - a).dot(e) / e.norm_squared()).clamp(0.0, 1.0);
            let dist = (a + e * t).distance(*p);
            if dist < best.0 {
                best = (dist, arc[i] + t * e.norm());
            }
        }
        assert!(best.0 < 1e-12);
        let pos = if k == 0 { 0.0 } else { best.1 };
        assert!((pos - target).abs() < 1e-10 * total, "k={k}");
    }
    assert!(r.edge_ratio() <= 1.2);
    // Chords shorten the arcs they replace at O(N⁻²).
    assert_relative_eq!(r.total_length(), total, max_relative = 1e-4);
    assert_eq!(r.orientation(), Orientation::Positive);
}

#[test]
fn resample_preserves_area_at_second_order() {
    let fine = ellipse(4096, 2.0, 1.0);
    let a0 = fine.enclosed_area();
    let mut errs = Vec::new();
    for n in [128, 256, 512] {
        let r = fine.resample_uniform(n).unwrap();
        errs.push(((r.enclosed_area() - a0) / a0).abs());
    }
    assert!(errs[0] < 1e-2);
    for w in errs.windows(2) {
        assert!(w[1] < 0.3 * w[0], "{errs:?}");
    }
}

#[test]
fn embedded_examples() {
    assert!(circle(256, 1.0).is_embedded());
    let corners = [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 2.0)];
    let bowtie: Vec<(f64, f64)> = (0..8)
        .map(|k| {
            let (a, b) = (corners[k / 2], corners[(k / 2 + 1) % 4]);
            let t = 0.5 * (k % 2) as f64;
            (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
        })
        .collect();
    let bowtie = DiscreteCurve::from_xy(bowtie).unwrap();
    let witness = bowtie.self_intersection().expect("bowtie crosses");
    assert!(brute_force_crossings(bowtie.vertices()).contains(&witness));
    let limacon = DiscreteCurve::from_parametric(512, |t| {
        Point2::from_angle(t) * (1.0 + 1.5 * t.cos())
    })
    .unwrap();
    let oracle = brute_force_crossings(limacon.vertices());
    assert!(!oracle.is_empty());
    let (i, j) = limacon.self_intersection().expect("inner loop crosses itself");
    assert!(oracle.contains(&(i.min(j), i.max(j))), "witness ({i}, {j})");
}

#[test]
fn embeddedness_agrees_with_brute_force() {
    let mut crossing = 0;
    for seed in 0..100 {
        let v = random_fourier_curve(1000 + seed, 6, 0.35, 256);
        let Ok(c) = DiscreteCurve::new(v.clone()) else { continue };
        let oracle = brute_force_crossings(&v);
        assert_eq!(c.is_embedded(), oracle.is_empty(), "seed {seed}");
        if let Some((i, j)) = c.self_intersection() {
            assert!(oracle.contains(&(i.min(j), i.max(j))), "seed {seed}");
            crossing += 1;
        }
    }
    // The amplitude is chosen so both outcomes occur.
    assert!(crossing > 10 && crossing < 90, "{crossing} crossing curves");

    for k in 0..20 {
        // Epitrochoid-like loops: z = e^{it} + a e^{imt} self-intersects once a·m > 1.
        let m = 2.0 + (k % 4) as f64;
        let a = (1.2 + 0.1 * (k / 4) as f64) / m;
        let c = DiscreteCurve::from_parametric(300, |t| {
            Point2::from_angle(t) + Point2::from_angle(m * t) * a
        })
        .unwrap();
        let oracle = brute_force_crossings(c.vertices());
        assert!(!oracle.is_empty(), "k={k}");
        assert!(!c.is_embedded(), "k={k}");
    }
}
