// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration files.
//!
//! A configuration is a small TOML document of `key = value` lines grouped
//! in sections:
//!
//! ```toml
//! seed = 7
//! forcing = "area"            # zero | area | length | jianpan | constant:<h>
//! output = "out/star"         # relative to the config file
//! monitors = ["THETA_RANGE", "EMBEDDEDNESS"]   # optional, default all
//!
//! [generator]
//! name = "star"               # or: file = "initial.curve"
//! n = 1024
//! epsilon = 0.15
//! m = 5
//!
//! [stepper]
//! cfl = 0.4
//! max_time = 2.0
//! monitor_every = 200
//!
//! [sweep]                     # only read by `sweep`
//! epsilon = [0.1, 0.15, 0.2]
//! forcing = ["zero", "area"]
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::flow::StepperConfig;
use crate::forcing::ForcingSpec;
use crate::generate::{GeneratorKind, GeneratorSpec};
use crate::verify::{CheckId, TheoremCatalog};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    At { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

/// Where the initial curve comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveSource {
    Generator(GeneratorSpec),
    File(PathBuf),
}

/// One axis of a parameter sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepAxis {
    Forcing(Vec<ForcingSpec>),
    Parameter { name: String, values: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: CurveSource,
    pub forcing: ForcingSpec,
    pub stepper: StepperConfig,
    pub monitors: TheoremCatalog,
    pub output: Option<PathBuf>,
    pub seed: u64,
    /// Sweep axes in key order; empty unless a `[sweep]` section is present.
    pub sweep: Vec<SweepAxis>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    seed: u64,
    forcing: String,
    output: Option<PathBuf>,
    monitors: Option<Vec<String>>,
    generator: RawGenerator,
    #[serde(default)]
    stepper: StepperConfig,
    sweep: Option<BTreeMap<String, toml::Value>>,
}

#[derive(Deserialize)]
struct RawGenerator {
    name: Option<String>,
    file: Option<PathBuf>,
    n: Option<usize>,
    #[serde(flatten)]
    params: BTreeMap<String, f64>,
}

/// First line whose key is `key`, for diagnostics on semantic errors.
fn line_of(text: &str, key: &str) -> Option<usize> {
    text.lines().position(|l| {
        l.trim_start()
            .strip_prefix(key)
            .is_some_and(|rest| rest.trim_start().starts_with('='))
    })
    .map(|k| k + 1)
}

fn line_at(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

impl RunConfig {
    /// Parses configuration text; relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| match e.span() {
            Some(span) => ConfigError::At {
                line: line_at(text, span.start),
                msg: e.message().to_string(),
            },
            None => ConfigError::Invalid(e.message().to_string()),
        })?;
        let at = |key: &str, msg: String| match line_of(text, key) {
            Some(line) => ConfigError::At { line, msg },
            None => ConfigError::Invalid(msg),
        };

        let mut stepper = raw.stepper;
        // Without an explicit `[stepper] n` the run keeps the generator's size.
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
            ConfigError::Invalid(e.message().to_string())
        })?;
        let stepper_n_given = table
            .get("stepper")
            .and_then(|s| s.get("n"))
            .is_some();
        if let (Some(n), false) = (raw.generator.n, stepper_n_given) {
            stepper.n = n;
        }

        let forcing: ForcingSpec = raw.forcing.parse().map_err(|e| at("forcing", format!("{e}")))?;

        let source = match (raw.generator.name, raw.generator.file) {
            (Some(name), None) => {
                let kind: GeneratorKind = name.parse().map_err(|e| at("name", format!("{e}")))?;
                let mut spec = GeneratorSpec::new(kind, raw.generator.n.unwrap_or(stepper.n));
                spec.params = raw.generator.params;
                spec.validate().map_err(|e| {
                    let key = spec
                        .params
                        .keys()
                        .find(|k| !kind.defaults().iter().any(|(d, _)| d == k))
                        .cloned()
                        .unwrap_or_default();
                    at(&key, e.to_string())
                })?;
                CurveSource::Generator(spec)
            }
            (None, Some(file)) => {
                if let Some(key) = raw.generator.params.keys().next() {
                    return Err(at(key, format!("'{key}' has no meaning for a curve file")));
                }
                CurveSource::File(base.join(file))
            }
            (Some(_), Some(_)) => {
                return Err(at("file", "give either generator name or file, not both".into()))
            }
            (None, None) => {
                return Err(ConfigError::Invalid(
                    "[generator] needs a name or a file".into(),
                ))
            }
        };

        stepper
            .validate()
            .map_err(|e| ConfigError::Invalid(format!("[stepper]: {e}")))?;

        let monitors = match raw.monitors {
            None => TheoremCatalog::all(),
            Some(names) => {
                let ids = names
                    .iter()
                    .map(|n| n.parse::<CheckId>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| at("monitors", e.to_string()))?;
                TheoremCatalog::only(ids)
            }
        };

        let mut sweep = Vec::new();
        for (key, value) in raw.sweep.unwrap_or_default() {
            let items = value
                .as_array()
                .ok_or_else(|| at(&key, format!("sweep axis '{key}' must be an array")))?;
            if items.is_empty() {
                return Err(at(&key, format!("sweep axis '{key}' is empty")));
            }
            if key == "forcing" {
                let specs = items
                    .iter()
                    .map(|v| {
                        v.as_str()
                            .ok_or_else(|| "forcing values must be strings".to_string())
                            .and_then(|s| s.parse::<ForcingSpec>().map_err(|e| e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|msg| at(&key, msg))?;
                sweep.push(SweepAxis::Forcing(specs));
            } else {
                let CurveSource::Generator(spec) = &source else {
                    return Err(at(&key, "parameter sweeps need a generator".into()));
                };
                if !spec.kind.defaults().iter().any(|(d, _)| *d == key) {
                    return Err(at(
                        &key,
                        format!("generator {} has no parameter '{key}'", spec.kind),
                    ));
                }
                let values = items
                    .iter()
                    .map(|v| v.as_float().or_else(|| v.as_integer().map(|i| i as f64)))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| at(&key, format!("sweep values for '{key}' must be numbers")))?;
                sweep.push(SweepAxis::Parameter { name: key, values });
            }
        }

        Ok(RunConfig {
            source,
            forcing,
            stepper,
            monitors,
            output: raw.output.map(|p| base.join(p)),
            seed: raw.seed,
            sweep,
        })
    }

    pub fn from_file(path: &Path) -> Result<Self, crate::Error> {
        let text = std::fs::read_to_string(path).map_err(|e| crate::Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Ok(Self::parse(&text, base)?)
    }

    /// Every point of the sweep grid as a standalone configuration, in
    /// lexicographic order of the axes. Without a sweep, just `self`.
    pub fn expand_sweep(&self) -> Vec<RunConfig> {
        let mut grid = vec![RunConfig {
            sweep: Vec::new(),
            ..self.clone()
        }];
        for axis in &self.sweep {
            grid = grid
                .into_iter()
                .flat_map(|cfg| -> Vec<RunConfig> {
                    match axis {
                        SweepAxis::Forcing(specs) => specs
                            .iter()
                            .map(|&forcing| RunConfig {
                                forcing,
                                ..cfg.clone()
                            })
                            .collect(),
                        SweepAxis::Parameter { name, values } => values
                            .iter()
                            .map(|&v| {
                                let mut c = cfg.clone();
                                if let CurveSource::Generator(spec) = &mut c.source {
                                    spec.params.insert(name.clone(), v);
                                }
                                c
                            })
                            .collect(),
                    }
                })
                .collect();
        }
        grid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const STAR: &str = r#"
seed = 3
forcing = "area"
output = "out"

[generator]
name = "star"
n = 512
epsilon = 0.15
m = 5

[stepper]
max_time = 0.5
monitor_every = 50
"#;

    #[test]
    fn parses_a_full_config() {
        let cfg = RunConfig::parse(STAR, Path::new("/tmp/cfg")).unwrap();
        assert_eq!(cfg.forcing, ForcingSpec::AreaPreserving);
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.output.as_deref(), Some(Path::new("/tmp/cfg/out")));
        assert_eq!(cfg.stepper.max_time, 0.5);
        assert_eq!(cfg.stepper.cfl, 0.4);
        assert_eq!(cfg.stepper.n, 512);
        let CurveSource::Generator(spec) = &cfg.source else {
            panic!("expected a generator")
        };
        assert_eq!(spec.n, 512);
        assert_eq!(spec.param("m"), 5.0);
        assert_eq!(cfg.monitors, TheoremCatalog::all());
    }

    #[test]
    fn syntax_errors_carry_the_line() {
        let text = "forcing = \"zero\"\n[generator]\nname = \"circle\"\nr = oops\n";
        let err = RunConfig::parse(text, Path::new(".")).unwrap_err();
        assert!(matches!(err, ConfigError::At { line: 4, .. }), "{err}");
    }

    #[test]
    fn semantic_errors_carry_the_line() {
        let text = "forcing = \"zero\"\n\n[generator]\nname = \"circle\"\nradius = 2\n";
        let err = RunConfig::parse(text, Path::new(".")).unwrap_err();
        assert!(matches!(err, ConfigError::At { line: 5, .. }), "{err}");

        let text = "forcing = \"gage\"\n[generator]\nname = \"circle\"\n";
        let err = RunConfig::parse(text, Path::new(".")).unwrap_err();
        assert!(matches!(err, ConfigError::At { line: 1, .. }), "{err}");

        let text = "forcing = \"zero\"\n[generator]\nname = \"circle\"\n[stepper]\ncfll = 0.1\n";
        let err = RunConfig::parse(text, Path::new(".")).unwrap_err();
        assert!(matches!(err, ConfigError::At { line: 5, .. }), "{err}");
    }

    #[test]
    fn sweep_expands_in_key_order() {
        let text = format!("{STAR}\n[sweep]\nforcing = [\"zero\", \"length\"]\nepsilon = [0.1, 0.2, 0.3]\n");
        let cfg = RunConfig::parse(&text, Path::new(".")).unwrap();
        let grid = cfg.expand_sweep();
        assert_eq!(grid.len(), 6);
        // `epsilon` sorts before `forcing`, so forcing varies fastest.
        let labels: Vec<(f64, String)> = grid
            .iter()
            .map(|c| match &c.source {
                CurveSource::Generator(s) => (s.param("epsilon"), c.forcing.to_string()),
                CurveSource::File(_) => unreachable!(),
            })
            .collect();
        assert_eq!(labels[0], (0.1, "zero".to_string()));
        assert_eq!(labels[1], (0.1, "length".to_string()));
        assert_eq!(labels[5], (0.3, "length".to_string()));
    }
}
