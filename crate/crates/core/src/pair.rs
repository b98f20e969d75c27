// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-point functionals on a closed curve.
//!
//! For an ordered vertex pair `(p, q)` with `p ≠ q`:
//!
//! * `d = |X_q − X_p|`, the chord;
//! * `l`, the arc length from `p` to `q` in the direction of traversal;
//! * `ψ = (L/π)·sin(π l / L)`, symmetric under `l ↦ L − l`;
//! * `θ`, the total turning from `p` to `q`: the turning angles strictly
//!   between them plus half the turning angle at each endpoint, so that
//!   `θ(p→q) + θ(q→p)` is exactly the total turning;
//! * `w = (X_q − X_p)/d`.
//!
//! The chord-arc ratio `d/ψ` is identically one on a circle and bounded
//! below on embedded curves. [`PairTable`] precomputes cumulative arc length
//! and cumulative turning so every pair query is O(1).

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::DiscreteCurve;
use crate::error::CurveError;
use crate::frames::LocalGeometry;
use crate::point::Point2;

/// Tolerance on `|⟨w,τ_p⟩ − ⟨w,τ_q⟩|` below which a pair is accepted as
/// first-order critical by [`PairTable::classify_minimizer`].
pub const DEFAULT_FIRST_VARIATION_TOL: f64 = 0.05;

/// Below this `sin(β/2)` the normal sign pattern cannot separate the three
/// cases and the θ residual decides instead.
const DEGENERATE_HALF_ANGLE_SIN: f64 = 0.05;

/// `ψ(l) = (L/π)·sin(πl/L)`.
#[inline]
pub fn psi(l: f64, total_length: f64) -> f64 {
    (total_length / PI) * (PI * l / total_length).sin()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    pub d: f64,
    pub l: f64,
    pub psi: f64,
    pub ratio: f64,
    pub theta: f64,
    /// Unit chord direction; `None` only when `d == 0`.
    pub w: Option<Point2>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaExtrema {
    pub min: f64,
    pub max: f64,
    pub argmin: (usize, usize),
    pub argmax: (usize, usize),
}

impl ThetaExtrema {
    /// `θ_max + θ_min − 2π`, zero for an embedded curve.
    pub fn duality_gap(&self) -> f64 {
        self.max + self.min - TAU
    }
}

/// Which sign pattern a critical pair of `d/ψ` exhibits.
///
/// * `I`: `⟨w,ν_p⟩ = −⟨w,ν_q⟩ = −sin(β/2)`, `θ = 2πk + β`;
/// * `II`: `⟨w,ν_p⟩ = −⟨w,ν_q⟩ = sin(β/2)`, `θ = 2πk − β`;
/// * `III`: `⟨w,ν_p⟩ = ⟨w,ν_q⟩`, `θ = 2πk`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinimizerCase {
    I,
    II,
    III,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizerClassification {
    pub case: MinimizerCase,
    pub beta: f64,
    pub k: i64,
    /// `first_variation`, `sign_pattern` and `theta`.
    pub residuals: BTreeMap<String, f64>,
}

/// Precomputed per-vertex data for O(1) pair queries.
#[derive(Debug, Clone)]
pub struct PairTable<'a> {
    curve: &'a DiscreteCurve,
    geometry: LocalGeometry,
    arc: Vec<f64>,
    cumulative_turning: Vec<f64>,
    total_turning: f64,
}

impl<'a> PairTable<'a> {
    pub fn new(curve: &'a DiscreteCurve) -> Result<Self, CurveError> {
        let geometry = LocalGeometry::new(curve)?;
        Ok(Self::with_geometry(curve, geometry))
    }

    /// Reuses already computed local geometry of `curve`.
    pub fn with_geometry(curve: &'a DiscreteCurve, geometry: LocalGeometry) -> Self {
        let arc = curve.cumulative_arc_length();
        let mut cumulative_turning = Vec::with_capacity(curve.len());
        let mut before = 0.0;
        for &phi in &geometry.turning {
            cumulative_turning.push(before + 0.5 * phi);
            before += phi;
        }
        PairTable {
            curve,
            geometry,
            arc,
            cumulative_turning,
            total_turning: before,
        }
    }

    #[inline]
    pub fn curve(&self) -> &DiscreteCurve {
        self.curve
    }

    #[inline]
    pub fn geometry(&self) -> &LocalGeometry {
        &self.geometry
    }

    #[inline]
    pub fn total_length(&self) -> f64 {
        self.arc[self.curve.len()]
    }

    /// Sum of all turning angles, `2π·orientation` on an embedded curve.
    #[inline]
    pub fn total_turning(&self) -> f64 {
        self.total_turning
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(), CurveError> {
        let n = self.curve.len();
        if i == j || i >= n || j >= n {
            return Err(CurveError::BadPair { i, j, n });
        }
        Ok(())
    }

    /// Arc length from `i` to `j` in the direction of traversal (`i ≠ j`).
    #[inline]
    pub fn forward_arc(&self, i: usize, j: usize) -> f64 {
        if j > i {
            self.arc[j] - self.arc[i]
        } else {
            self.total_length() - (self.arc[i] - self.arc[j])
        }
    }

    /// Total turning from `i` to `j` in the direction of traversal (`i ≠ j`).
    #[inline]
    pub fn theta(&self, i: usize, j: usize) -> f64 {
        let q = &self.cumulative_turning;
        if j > i {
            q[j] - q[i]
        } else {
            self.total_turning + q[j] - q[i]
        }
    }

    pub fn record(&self, i: usize, j: usize) -> Result<PairRecord, CurveError> {
        self.check_pair(i, j)?;
        let total = self.total_length();
        let chord = self.curve.vertex(j) - self.curve.vertex(i);
        let d = chord.norm();
        if d == 0.0 {
            return Err(CurveError::SelfTouching { i, j });
        }
        let l = self.forward_arc(i, j);
        let psi = psi(l, total);
        Ok(PairRecord {
            i,
            j,
            d,
            l,
            psi,
            ratio: d / psi,
            theta: self.theta(i, j),
            w: Some(chord * (1.0 / d)),
        })
    }

    /// Extrema of θ over all ordered pairs, by prefix extrema in O(N).
    pub fn theta_scan(&self) -> ThetaExtrema {
        let q = &self.cumulative_turning;
        let n = q.len();
        let total = self.total_turning;

        let mut min = (f64::INFINITY, (0, 0));
        let mut max = (f64::NEG_INFINITY, (0, 0));
        // forward pairs i < j: q[j] - q[i]
        let (mut hi, mut hi_at) = (q[0], 0);
        let (mut lo, mut lo_at) = (q[0], 0);
        for (j, &qj) in q.iter().enumerate().skip(1) {
            if qj - hi < min.0 {
                min = (qj - hi, (hi_at, j));
            }
            if qj - lo > max.0 {
                max = (qj - lo, (lo_at, j));
            }
            if qj > hi {
                (hi, hi_at) = (qj, j);
            }
            if qj < lo {
                (lo, lo_at) = (qj, j);
            }
        }
        // wrapping pairs j < i: total + q[j] - q[i]
        let (mut lo, mut lo_at) = (q[0], 0);
        let (mut hi, mut hi_at) = (q[0], 0);
        for (i, &qi) in q.iter().enumerate().skip(1) {
            let low = total + lo - qi;
            if low < min.0 {
                min = (low, (i, lo_at));
            }
            let high = total + hi - qi;
            if high > max.0 {
                max = (high, (i, hi_at));
            }
            if qi < lo {
                (lo, lo_at) = (qi, i);
            }
            if qi > hi {
                (hi, hi_at) = (qi, i);
            }
        }
        debug_assert!(n >= 2);
        ThetaExtrema {
            min: min.0,
            max: max.0,
            argmin: min.1,
            argmax: max.1,
        }
    }

    /// Exhaustive scan of `d/ψ` over unordered pairs. The returned record is
    /// oriented so that its forward arc is at most `L/2`; ties go to the
    /// smallest `(i, j)`.
    pub fn min_chord_arc(&self) -> Result<PairRecord, CurveError> {
        let n = self.curve.len();
        let total = self.total_length();
        let vertices = self.curve.vertices();
        let arc = &self.arc;

        let best = (0..n - 1)
            .into_par_iter()
            .map(|i| -> Result<(f64, usize, usize), CurveError> {
                let xi = vertices[i];
                let mut row = (f64::INFINITY, i, i + 1);
                for j in i + 1..n {
                    let d = (vertices[j] - xi).norm();
                    if d == 0.0 {
                        return Err(CurveError::SelfTouching { i, j });
                    }
                    let forward = arc[j] - arc[i];
                    let l = forward.min(total - forward);
                    let ratio = d / psi(l, total);
                    if ratio < row.0 {
                        row = (ratio, i, j);
                    }
                }
                Ok(row)
            })
            .try_reduce(
                || (f64::INFINITY, usize::MAX, usize::MAX),
                |a, b| Ok(min_lexicographic(a, b)),
            )?;

        let (_, i, j) = best;
        let forward = arc[j] - arc[i];
        if forward <= total - forward {
            self.record(i, j)
        } else {
            self.record(j, i)
        }
    }

    fn chord_projections(&self, rec: &PairRecord) -> Result<(Point2, [f64; 4]), CurveError> {
        self.check_pair(rec.i, rec.j)?;
        let w = rec.w.ok_or(CurveError::SelfTouching { i: rec.i, j: rec.j })?;
        let p = &self.geometry.frames[rec.i];
        let q = &self.geometry.frames[rec.j];
        Ok((
            w,
            [
                w.dot(p.tangent),
                w.dot(q.tangent),
                w.dot(p.normal),
                w.dot(q.normal),
            ],
        ))
    }

    /// Sign-pattern classification of a critical pair, with the default
    /// first-variation tolerance.
    pub fn classify_minimizer(
        &self,
        rec: &PairRecord,
    ) -> Result<MinimizerClassification, CurveError> {
        self.classify_minimizer_with_tol(rec, DEFAULT_FIRST_VARIATION_TOL)
    }

    pub fn classify_minimizer_with_tol(
        &self,
        rec: &PairRecord,
        tol: f64,
    ) -> Result<MinimizerClassification, CurveError> {
        let (_, [wtp, wtq, wnp, wnq]) = self.chord_projections(rec)?;
        let gap = (wtp - wtq).abs();
        if gap > tol {
            return Err(CurveError::NotCritical {
                i: rec.i,
                j: rec.j,
                gap,
                tol,
            });
        }
        let half_cos = (0.5 * (wtp + wtq)).clamp(-1.0, 1.0);
        let beta = 2.0 * half_cos.acos();
        let s = (0.5 * beta).sin();
        let theta = rec.theta;

        let nearest_k = |offset: f64| ((theta - offset) / TAU).round();
        let candidates = [
            (
                MinimizerCase::I,
                (wnp + s).abs().max((wnq - s).abs()),
                nearest_k(beta),
                beta,
            ),
            (
                MinimizerCase::II,
                (wnp - s).abs().max((wnq + s).abs()),
                nearest_k(-beta),
                -beta,
            ),
            (MinimizerCase::III, (wnp - wnq).abs(), nearest_k(0.0), 0.0),
        ];
        let theta_residual = |c: &(MinimizerCase, f64, f64, f64)| (theta - (TAU * c.2 + c.3)).abs();
        let chosen = if s >= DEGENERATE_HALF_ANGLE_SIN {
            candidates
                .iter()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap()
        } else {
            candidates
                .iter()
                .min_by(|a, b| theta_residual(a).total_cmp(&theta_residual(b)))
                .unwrap()
        };

        let mut residuals = BTreeMap::new();
        residuals.insert("first_variation".to_string(), gap);
        residuals.insert("sign_pattern".to_string(), chosen.1);
        residuals.insert("theta".to_string(), theta_residual(chosen));
        Ok(MinimizerClassification {
            case: chosen.0,
            beta,
            k: chosen.2 as i64,
            residuals,
        })
    }

    /// `max(|⟨w,τ_p⟩ − c|, |⟨w,τ_q⟩ − c|)` with `c = (d/ψ)·cos(πl/L)`; zero
    /// at a critical pair of `d/ψ`.
    pub fn first_variation_residual(&self, rec: &PairRecord) -> Result<f64, CurveError> {
        let (_, [wtp, wtq, _, _]) = self.chord_projections(rec)?;
        let target = rec.ratio * (PI * rec.l / self.total_length()).cos();
        Ok((wtp - target).abs().max((wtq - target).abs()))
    }

    /// `⟨w, κ_q − κ_p⟩ + 4π²d/L²` with curvature vectors `κ = −κν`;
    /// nonnegative at a local minimum of `d/ψ`.
    pub fn second_variation_margin(&self, rec: &PairRecord) -> Result<f64, CurveError> {
        let (w, _) = self.chord_projections(rec)?;
        let kp = self.geometry.frames[rec.i].curvature_vector();
        let kq = self.geometry.frames[rec.j].curvature_vector();
        let total = self.total_length();
        Ok(w.dot(kq - kp) + 4.0 * PI * PI * rec.d / (total * total))
    }

    /// Writes `i,j,d,l,psi,ratio,theta` for every pair `i < j`.
    pub fn write_pair_dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "i,j,d,l,psi,ratio,theta")?;
        let n = self.curve.len();
        for i in 0..n {
            for j in i + 1..n {
                let Ok(r) = self.record(i, j) else {
                    continue;
                };
                writeln!(
                    out,
                    "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                    r.i, r.j, r.d, r.l, r.psi, r.ratio, r.theta
                )?;
            }
        }
        Ok(())
    }
}

fn min_lexicographic(a: (f64, usize, usize), b: (f64, usize, usize)) -> (f64, usize, usize) {
    match a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))) {
        std::cmp::Ordering::Greater => b,
        _ => a,
    }
}

/// Record for the ordered pair `(i, j)`.
pub fn pair_record(curve: &DiscreteCurve, i: usize, j: usize) -> Result<PairRecord, CurveError> {
    PairTable::new(curve)?.record(i, j)
}

pub fn theta_scan(curve: &DiscreteCurve) -> Result<ThetaExtrema, CurveError> {
    Ok(PairTable::new(curve)?.theta_scan())
}

pub fn min_chord_arc(curve: &DiscreteCurve) -> Result<PairRecord, CurveError> {
    PairTable::new(curve)?.min_chord_arc()
}

pub fn classify_minimizer(
    curve: &DiscreteCurve,
    rec: &PairRecord,
) -> Result<MinimizerClassification, CurveError> {
    PairTable::new(curve)?.classify_minimizer(rec)
}

pub fn first_variation_residual(curve: &DiscreteCurve, rec: &PairRecord) -> Result<f64, CurveError> {
    PairTable::new(curve)?.first_variation_residual(rec)
}

pub fn second_variation_check(curve: &DiscreteCurve, rec: &PairRecord) -> Result<f64, CurveError> {
    PairTable::new(curve)?.second_variation_margin(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize) -> DiscreteCurve {
        DiscreteCurve::from_parametric(n, Point2::from_angle).unwrap()
    }

    #[test]
    fn antipodal_pair_on_unit_circle() {
        let c = circle(1024);
        let r = pair_record(&c, 0, 512).unwrap();
        assert!((r.d - 2.0).abs() < 1e-5);
        assert!((r.l - PI).abs() < 1e-4);
        assert!((r.psi - 2.0).abs() < 1e-5);
        assert!((r.ratio - 1.0).abs() < 1e-5);
        assert!((r.theta - PI).abs() < 1e-4);
    }

    #[test]
    fn quarter_pair_on_unit_circle() {
        let r = pair_record(&circle(1024), 100, 356).unwrap();
        assert!((r.theta - PI / 2.0).abs() < 1e-4);
        assert!((r.ratio - 1.0).abs() < 1e-5);
    }

    #[test]
    fn invalid_pairs() {
        let c = circle(16);
        assert!(matches!(pair_record(&c, 3, 3), Err(CurveError::BadPair { .. })));
        assert!(matches!(pair_record(&c, 3, 16), Err(CurveError::BadPair { .. })));
    }

    #[test]
    fn coincident_vertices_are_self_touching() {
        // A figure that revisits the origin.
        let c = DiscreteCurve::from_xy([
            (0.0, 0.0),
            (1.0, -1.0),
            (2.0, 0.0),
            (1.0, 1.0),
            (0.0, 0.0),
            (-1.0, 1.0),
            (-2.0, 0.0),
            (-1.0, -1.5),
        ])
        .unwrap();
        assert_eq!(
            pair_record(&c, 0, 4),
            Err(CurveError::SelfTouching { i: 0, j: 4 })
        );
        assert!(matches!(
            min_chord_arc(&c),
            Err(CurveError::SelfTouching { i: 0, j: 4 })
        ));
    }

    #[test]
    fn circle_antipodal_classification() {
        let c = circle(1024);
        let table = PairTable::new(&c).unwrap();
        let rec = table.record(0, 512).unwrap();
        let cls = table.classify_minimizer(&rec).unwrap();
        assert_eq!(cls.case, MinimizerCase::I);
        assert_eq!(cls.k, 0);
        assert!((cls.beta - PI).abs() < 1e-6);
        // equality case of the second-variation inequality
        let margin = table.second_variation_margin(&rec).unwrap();
        assert!(margin.abs() < 1e-4, "{margin}");
    }

    #[test]
    fn non_critical_pair_is_rejected() {
        let c = DiscreteCurve::from_parametric(512, |t| Point2::new(2.0 * t.cos(), t.sin())).unwrap();
        let table = PairTable::new(&c).unwrap();
        let rec = table.record(20, 200).unwrap();
        assert!(matches!(
            table.classify_minimizer(&rec),
            Err(CurveError::NotCritical { .. })
        ));
    }

    #[test]
    fn pair_dump_has_header_and_all_pairs() {
        let c = circle(10);
        let mut buf = Vec::new();
        PairTable::new(&c).unwrap().write_pair_dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("i,j,d,l,psi,ratio,theta"));
        assert_eq!(lines.count(), 45);
    }
}
