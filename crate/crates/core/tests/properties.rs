// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use std::f64::consts::{PI, TAU};

use chordarc::io::{curve_to_string, parse_curve};
use chordarc::{evaluate_forcing, psi, DiscreteCurve, ForcingSpec, PairTable, Point2};
use common::{brute_force_crossings, random_fourier_curve};
use proptest::prelude::*;

/// Embedded random curves: small perturbations of the unit circle.
fn embedded_curve() -> impl Strategy<Value = DiscreteCurve> {
    (any::<u64>(), 2i32..7, 0.0..0.12f64, 64usize..200).prop_map(|(seed, modes, amp, n)| {
        DiscreteCurve::new(random_fourier_curve(seed, modes, amp, n)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_is_symmetric_and_bounded(total in 0.1..100.0f64, frac in 0.0..1.0f64) {
        let l = total * frac;
        let a = psi(l, total);
        let b = psi(total - l, total);
        prop_assert!((a - b).abs() <= 1e-12 * total);
        let short = l.min(total - l);
        prop_assert!(a >= 2.0 / PI * short - 1e-12 * total);
        prop_assert!(a <= short + 1e-12 * total);
    }

    #[test]
    fn pair_invariants(curve in embedded_curve(), a in 0usize..1000, b in 0usize..1000) {
        let n = curve.len();
        let (i, j) = (a % n, b % n);
        prop_assume!(i != j);
        let t = PairTable::new(&curve).unwrap();
        let total = t.total_length();
        let r = t.record(i, j).unwrap();
        prop_assert!(r.d > 0.0);
        prop_assert!(r.d <= r.l + 1e-12);
        prop_assert!((r.l + t.forward_arc(j, i) - total).abs() <= 1e-10 * total);
        prop_assert!((r.psi - psi(r.l, total)).abs() <= 1e-12 * r.psi);
        prop_assert!((r.ratio - r.d / r.psi).abs() <= 1e-15 * r.ratio.max(1.0));
        prop_assert!((t.theta(i, j) + t.theta(j, i) - TAU).abs() < 1e-10);
    }

    #[test]
    fn duality_on_embedded_curves(curve in embedded_curve()) {
        let t = PairTable::new(&curve).unwrap();
        let scan = t.theta_scan();
        let tol = 1e-2f64.max(3.0 * t.geometry().max_abs_turning());
        prop_assert!(scan.duality_gap().abs() < tol);
        prop_assert!(curve.is_embedded());
        prop_assert!((t.total_turning() - TAU).abs() < 1e-10);
    }

    #[test]
    fn ratio_is_similarity_invariant(
        curve in embedded_curve(),
        scale in 0.1..10.0f64,
        dx in -5.0..5.0f64,
        dy in -5.0..5.0f64,
    ) {
        let moved = curve.scaled(scale).unwrap().translated(Point2::new(dx, dy)).unwrap();
        let a = PairTable::new(&curve).unwrap().min_chord_arc().unwrap();
        let b = PairTable::new(&moved).unwrap().min_chord_arc().unwrap();
        prop_assert!((a.ratio - b.ratio).abs() < 1e-9);
    }

    #[test]
    fn resampling_keeps_the_mesh_admissible(curve in embedded_curve(), n in 8usize..400) {
        let r = curve.resample_uniform(n).unwrap();
        prop_assert_eq!(r.len(), n);
        prop_assert!(r.edge_ratio() <= 1.2);
        prop_assert_eq!(r.orientation(), curve.orientation());
        prop_assert!(r.total_length() <= curve.total_length() * (1.0 + 1e-12));
    }

    #[test]
    fn forcing_is_nonnegative(curve in embedded_curve()) {
        for spec in ForcingSpec::FAMILIES {
            prop_assert!(evaluate_forcing(&spec, &curve).unwrap() >= 0.0);
        }
    }

    #[test]
    fn curve_files_round_trip_exactly(curve in embedded_curve()) {
        let back = parse_curve(&curve_to_string(&curve)).unwrap();
        prop_assert_eq!(back.vertices(), curve.vertices());
    }

    #[test]
    fn embeddedness_matches_the_oracle(seed in any::<u64>(), amp in 0.1..0.5f64) {
        let v = random_fourier_curve(seed, 5, amp, 128);
        if let Ok(c) = DiscreteCurve::new(v.clone()) {
            prop_assert_eq!(c.is_embedded(), brute_force_crossings(&v).is_empty());
        }
    }
}
