// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! The global term `h(t)` in the normal speed `h − κ`.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::DiscreteCurve;
use crate::error::CurveError;
use crate::frames::LocalGeometry;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ForcingError {
    #[error("h = L/2A needs a positive enclosed area, got {area}")]
    NonPositiveArea { area: f64 },
    #[error("computed forcing {value} is negative or not finite")]
    Inconsistent { value: f64 },
    #[error("constant forcing must be finite and nonnegative, got {0}")]
    BadConstant(f64),
    #[error("unknown forcing '{0}': expected zero, area, length, jianpan or constant:<value>")]
    Unknown(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Which global term drives the flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ForcingSpec {
    /// `h ≡ 0`: plain curve shortening flow.
    Zero,
    /// `h = 2π/L`: keeps the enclosed area fixed.
    AreaPreserving,
    /// `h = ∫κ² ds / 2π`: keeps the length fixed.
    LengthPreserving,
    /// `h = L / 2A`.
    JianPan,
    /// A fixed `h ≥ 0`.
    Constant(f64),
}

impl ForcingSpec {
    pub const FAMILIES: [ForcingSpec; 4] = [
        ForcingSpec::Zero,
        ForcingSpec::AreaPreserving,
        ForcingSpec::LengthPreserving,
        ForcingSpec::JianPan,
    ];

    pub fn constant(value: f64) -> Result<Self, ForcingError> {
        if value.is_finite() && value >= 0.0 {
            Ok(ForcingSpec::Constant(value))
        } else {
            Err(ForcingError::BadConstant(value))
        }
    }

    pub fn evaluate(&self, curve: &DiscreteCurve) -> Result<f64, ForcingError> {
        let geometry = LocalGeometry::new(curve)?;
        self.evaluate_with(&geometry, curve.enclosed_area())
    }

    /// Evaluates from precomputed local geometry and area. The curvature
    /// integral uses the same `κ_i` and `Δs_i` as the stepper.
    pub fn evaluate_with(&self, geometry: &LocalGeometry, area: f64) -> Result<f64, ForcingError> {
        let h = match *self {
            ForcingSpec::Zero => 0.0,
            ForcingSpec::AreaPreserving => TAU / geometry.length,
            ForcingSpec::LengthPreserving => geometry.integral_curvature_squared() / TAU,
            ForcingSpec::JianPan => {
                if area <= 0.0 {
                    return Err(ForcingError::NonPositiveArea { area });
                }
                geometry.length / (2.0 * area)
            }
            ForcingSpec::Constant(c) => c,
        };
        if !(h.is_finite() && h >= 0.0) {
            return Err(ForcingError::Inconsistent { value: h });
        }
        Ok(h)
    }

    /// Conserved quantity, if the family has one.
    pub fn conserved(&self) -> Option<Conserved> {
        match self {
            ForcingSpec::AreaPreserving => Some(Conserved::Area),
            ForcingSpec::LengthPreserving => Some(Conserved::Length),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conserved {
    Area,
    Length,
}

pub fn evaluate_forcing(spec: &ForcingSpec, curve: &DiscreteCurve) -> Result<f64, ForcingError> {
    spec.evaluate(curve)
}

impl fmt::Display for ForcingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForcingSpec::Zero => f.write_str("zero"),
            ForcingSpec::AreaPreserving => f.write_str("area"),
            ForcingSpec::LengthPreserving => f.write_str("length"),
            ForcingSpec::JianPan => f.write_str("jianpan"),
            ForcingSpec::Constant(c) => write!(f, "constant:{c}"),
        }
    }
}

impl FromStr for ForcingSpec {
    type Err = ForcingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "zero" => Ok(ForcingSpec::Zero),
            "area" => Ok(ForcingSpec::AreaPreserving),
            "length" => Ok(ForcingSpec::LengthPreserving),
            "jianpan" => Ok(ForcingSpec::JianPan),
            other => match other.strip_prefix("constant:") {
                Some(v) => {
                    let value: f64 = v
                        .trim()
                        .parse()
                        .map_err(|_| ForcingError::Unknown(other.to_string()))?;
                    ForcingSpec::constant(value)
                }
                None => Err(ForcingError::Unknown(other.to_string())),
            },
        }
    }
}

impl TryFrom<String> for ForcingSpec {
    type Error = ForcingError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<ForcingSpec> for String {
    fn from(f: ForcingSpec) -> String {
        f.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point2;

    fn circle(n: usize, r: f64) -> DiscreteCurve {
        DiscreteCurve::from_parametric(n, |t| Point2::from_angle(t) * r).unwrap()
    }

    #[test]
    fn unit_circle_is_stationary_for_every_nontrivial_family() {
        let c = circle(1024, 1.0);
        for spec in [
            ForcingSpec::AreaPreserving,
            ForcingSpec::LengthPreserving,
            ForcingSpec::JianPan,
        ] {
            let h = spec.evaluate(&c).unwrap();
            assert!((h - 1.0).abs() < 1e-5, "{spec}: {h}");
        }
        assert_eq!(ForcingSpec::Zero.evaluate(&c).unwrap(), 0.0);
    }

    #[test]
    fn area_forcing_on_radius_r() {
        for r in [0.5, 3.0] {
            let h = ForcingSpec::AreaPreserving.evaluate(&circle(1024, r)).unwrap();
            assert!((h - 1.0 / r).abs() < 1e-5);
        }
    }

    #[test]
    fn jian_pan_rejects_negative_area() {
        let c = circle(64, 1.0).reversed();
        assert!(matches!(
            ForcingSpec::JianPan.evaluate(&c),
            Err(ForcingError::NonPositiveArea { .. })
        ));
    }

    #[test]
    fn parse_and_display() {
        for s in ["zero", "area", "length", "jianpan", "constant:0.25"] {
            let spec: ForcingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("constant:-1".parse::<ForcingSpec>().is_err());
        assert!("constant:nan".parse::<ForcingSpec>().is_err());
        assert!("gage".parse::<ForcingSpec>().is_err());
    }
}
