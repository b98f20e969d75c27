// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Failures of curve construction and of the one- and two-point geometry on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("a closed curve needs at least {min} vertices, got {got}")]
    TooFewVertices { got: usize, min: usize },
    #[error("vertex {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("edge {index} has zero length")]
    ZeroEdge { index: usize },
    #[error("edge {index} is degenerate: length {length:e} is below {threshold:e}")]
    DegenerateEdge {
        index: usize,
        length: f64,
        threshold: f64,
    },
    #[error("cusp at vertex {index}: the turning angle is exactly ±π")]
    Cusp { index: usize },
    #[error("the enclosed area is zero, orientation is undefined")]
    ZeroArea,
    #[error("the curve is negatively oriented (signed area {area})")]
    NegativeOrientation { area: f64 },
    #[error("the curve self-touches: vertices {i} and {j} coincide")]
    SelfTouching { i: usize, j: usize },
    #[error("the curve is not embedded: edges {0} and {1} intersect")]
    NotEmbedded(usize, usize),
    #[error("vertex pair ({i}, {j}) is invalid for a curve with {n} vertices")]
    BadPair { i: usize, j: usize, n: usize },
    #[error(
        "pair ({i}, {j}) is not first-order critical: |<w,tau_p> - <w,tau_q>| = {gap:.3e} > {tol:.3e}"
    )]
    NotCritical { i: usize, j: usize, gap: f64, tol: f64 },
    #[error("resample target must have at least {min} vertices, got {got}")]
    ResampleTooSmall { got: usize, min: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
