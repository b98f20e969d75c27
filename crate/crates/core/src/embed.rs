// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! Self-intersection detection.
//!
//! Candidate edge pairs come from a uniform grid whose cell size is the
//! longest edge, so every edge touches at most four cells and the expected
//! cost is linear in `N` for well-spaced polygons. Each candidate is tested
//! with exact orientation signs; pairs that do not cross properly but come
//! within `1e-13·L` of each other count as touching, and touching counts as
//! an intersection.

use std::collections::HashMap;

use robust::{orient2d, Coord};

use crate::curve::DiscreteCurve;
use crate::point::Point2;

/// Contacts closer than this fraction of the total length count as intersections.
pub const CONTACT_FRACTION: f64 = 1e-13;

impl DiscreteCurve {
    /// True iff no two non-adjacent edges meet and no two adjacent edges fold
    /// onto each other.
    pub fn is_embedded(&self) -> bool {
        self.self_intersection().is_none()
    }

    /// The lexicographically smallest pair of intersecting edges, if any.
    pub fn self_intersection(&self) -> Option<(usize, usize)> {
        let n = self.len();
        let eps = CONTACT_FRACTION * self.total_length();

        let mut hits: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            let a = self.edge(i + n - 1);
            let b = self.edge(i);
            if a.cross(b) == 0.0 && a.dot(b) < 0.0 {
                let prev = (i + n - 1) % n;
                hits.push((prev.min(i), prev.max(i)));
            }
        }

        for (i, j) in self.candidate_pairs(eps) {
            if segments_meet(
                self.vertex(i),
                self.vertex(i + 1),
                self.vertex(j),
                self.vertex(j + 1),
                eps,
            ) {
                hits.push((i, j));
            }
        }
        hits.into_iter().min()
    }

    fn candidate_pairs(&self, eps: f64) -> Vec<(usize, usize)> {
        let n = self.len();
        let cell = self
            .edge_lengths()
            .into_iter()
            .fold(0.0, f64::max)
            .max(eps);
        let key = |p: f64| (p / cell).floor() as i64;

        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::with_capacity(2 * n);
        for i in 0..n {
            let a = self.vertex(i);
            let b = self.vertex(i + 1);
            let (x0, x1) = (key(a.x.min(b.x) - eps), key(a.x.max(b.x) + eps));
            let (y0, y1) = (key(a.y.min(b.y) - eps), key(a.y.max(b.y) + eps));
            for cx in x0..=x1 {
                for cy in y0..=y1 {
                    grid.entry((cx, cy)).or_default().push(i);
                }
            }
        }

        let mut pairs = Vec::new();
        for edges in grid.values() {
            for (k, &i) in edges.iter().enumerate() {
                for &j in &edges[k + 1..] {
                    let (i, j) = (i.min(j), i.max(j));
                    let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                    if !adjacent {
                        pairs.push((i, j));
                    }
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }
}

fn coord(p: Point2) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

fn orientation_sign(a: Point2, b: Point2, c: Point2) -> i8 {
    let o = orient2d(coord(a), coord(b), coord(c));
    if o > 0.0 {
        1
    } else if o < 0.0 {
        -1
    } else {
        0
    }
}

/// Closed segments `ab` and `cd` cross or come within `eps` of each other.
pub(crate) fn segments_meet(a: Point2, b: Point2, c: Point2, d: Point2, eps: f64) -> bool {
    let o1 = orientation_sign(a, b, c);
    let o2 = orientation_sign(a, b, d);
    let o3 = orientation_sign(c, d, a);
    let o4 = orientation_sign(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    let dist = point_segment_distance(c, a, b)
        .min(point_segment_distance(d, a, b))
        .min(point_segment_distance(a, c, d))
        .min(point_segment_distance(b, c, d));
    dist <= eps
}

fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let t = ((p - a).dot(ab) / ab.norm_squared()).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}
