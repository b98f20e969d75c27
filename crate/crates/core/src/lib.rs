// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! Chord-arc monitoring for curve shortening flows with a global forcing term.
//!
//! Closed polygons evolve by `∂X/∂t = (h − κ)ν`. Along the way the crate
//! tracks the chord-arc ratio `d/ψ(l)`, the pairwise total curvature `θ`,
//! and checks the claims proved about them for `h ≥ 0`.
//!
//! ```
//! use chordarc::{DiscreteCurve, Point2, PairTable};
//!
//! let circle = DiscreteCurve::from_parametric(256, Point2::from_angle).unwrap();
//! let table = PairTable::new(&circle).unwrap();
//! let best = table.min_chord_arc().unwrap();
//! assert!((best.ratio - 1.0).abs() < 1e-3);
//! ```

pub mod config;
pub mod curve;
mod embed;
pub mod error;
pub mod flow;
pub mod forcing;
pub mod frames;
pub mod generate;
pub mod io;
pub mod pair;
pub mod point;
pub mod session;
pub mod verify;

use std::path::{Path, PathBuf};

pub use curve::{DiscreteCurve, Orientation};
pub use error::CurveError;
pub use flow::{run, FlowState, MonitorSample, Scheme, StepperConfig, TerminalStatus, Trajectory};
pub use forcing::{evaluate_forcing, ForcingSpec};
pub use frames::LocalGeometry;
pub use pair::{
    classify_minimizer, min_chord_arc, pair_record, psi, theta_scan, MinimizerCase, PairRecord,
    PairTable, ThetaExtrema,
};
pub use point::Point2;
pub use verify::{verify, CheckId, CheckResult, CheckStatus, MonitorReport, TheoremCatalog};

/// Any failure surfaced by the crate's file-level entry points.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Forcing(#[from] forcing::ForcingError),
    #[error(transparent)]
    Flow(#[from] flow::FlowError),
    #[error(transparent)]
    Generate(#[from] generate::GenerateError),
    #[error(transparent)]
    Config(#[from] config::ConfigError),
    #[error(transparent)]
    Verify(#[from] verify::VerifyError),
    #[error("{}: {source}", .path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}
