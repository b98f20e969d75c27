// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! One-point geometry: turning angles, unit tangents and normals, curvature.
//!
//! Conventions:
//!
//! * the turning angle `φ_i ∈ (−π, π)` at vertex `i` is the signed angle from
//!   edge `i − 1` to edge `i` (counter-clockwise positive);
//! * the tangent `τ_i` is the normalized central difference
//!   `X_{i+1} − X_{i−1}`;
//! * the outward normal is `ν_i = (τ_2, −τ_1)`, which points away from the
//!   enclosed region on a positively oriented curve;
//! * the curvature is `κ_i = φ_i / Δs_i` with the dual length
//!   `Δs_i = (|e_{i−1}| + |e_i|) / 2`, so a positively oriented circle of
//!   radius `R` has `κ ≈ 1/R` and `Σ κ_i Δs_i` is exactly the total turning.

use crate::curve::DiscreteCurve;
use crate::error::CurveError;
use crate::point::Point2;

/// Edges shorter than this fraction of the total length are rejected.
pub const DEGENERATE_EDGE_FRACTION: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexFrame {
    pub tangent: Point2,
    pub normal: Point2,
    pub curvature: f64,
}

impl VertexFrame {
    /// Curvature vector `−κ ν`.
    #[inline]
    pub fn curvature_vector(&self) -> Point2 {
        self.normal * (-self.curvature)
    }
}

/// Everything the stepper and the pair scans need from one pass over the
/// vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalGeometry {
    pub edge_lengths: Vec<f64>,
    pub dual_lengths: Vec<f64>,
    pub turning: Vec<f64>,
    pub frames: Vec<VertexFrame>,
    pub length: f64,
}

impl LocalGeometry {
    pub fn new(curve: &DiscreteCurve) -> Result<Self, CurveError> {
        let n = curve.len();
        let v = curve.vertices();
        let edges: Vec<Point2> = (0..n)
            .map(|i| if i + 1 < n { v[i + 1] - v[i] } else { v[0] - v[i] })
            .collect();
        let edge_lengths: Vec<f64> = edges.iter().map(|e| e.norm()).collect();
        let length: f64 = edge_lengths.iter().sum();
        let threshold = DEGENERATE_EDGE_FRACTION * length;
        if let Some(index) = edge_lengths.iter().position(|&l| l < threshold) {
            return Err(CurveError::DegenerateEdge {
                index,
                length: edge_lengths[index],
                threshold,
            });
        }

        let mut turning = Vec::with_capacity(n);
        let mut dual_lengths = Vec::with_capacity(n);
        let mut frames = Vec::with_capacity(n);
        for i in 0..n {
            let prev = if i == 0 { n - 1 } else { i - 1 };
            let (a, b) = (edges[prev], edges[i]);
            let cross = a.cross(b);
            let dot = a.dot(b);
            if cross == 0.0 && dot < 0.0 {
                return Err(CurveError::Cusp { index: i });
            }
            let phi = cross.atan2(dot);
            let ds = 0.5 * (edge_lengths[prev] + edge_lengths[i]);
            // Central difference X_{i+1} − X_{i−1}.
            let tangent = (a + b).normalized();
            turning.push(phi);
            dual_lengths.push(ds);
            frames.push(VertexFrame {
                tangent,
                normal: Point2::new(tangent.y, -tangent.x),
                curvature: phi / ds,
            });
        }
        Ok(LocalGeometry {
            edge_lengths,
            dual_lengths,
            turning,
            frames,
            length,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn curvature(&self) -> impl Iterator<Item = f64> + '_ {
        self.frames.iter().map(|f| f.curvature)
    }

    /// `Σ φ_i`, equal to `Σ κ_i Δs_i`.
    pub fn total_curvature(&self) -> f64 {
        self.turning.iter().sum()
    }

    /// `Σ κ_i² Δs_i`.
    pub fn integral_curvature_squared(&self) -> f64 {
        self.frames
            .iter()
            .zip(&self.dual_lengths)
            .map(|(f, ds)| f.curvature * f.curvature * ds)
            .sum()
    }

    pub fn max_abs_curvature(&self) -> f64 {
        self.curvature().map(f64::abs).fold(0.0, f64::max)
    }

    pub fn max_abs_turning(&self) -> f64 {
        self.turning.iter().copied().map(f64::abs).fold(0.0, f64::max)
    }

    pub fn min_edge_length(&self) -> f64 {
        self.edge_lengths
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Signed exterior angle at every vertex.
pub fn turning_angles(curve: &DiscreteCurve) -> Result<Vec<f64>, CurveError> {
    Ok(LocalGeometry::new(curve)?.turning)
}

/// Unit tangent, outward normal and curvature at every vertex.
pub fn vertex_frames(curve: &DiscreteCurve) -> Result<Vec<VertexFrame>, CurveError> {
    Ok(LocalGeometry::new(curve)?.frames)
}
