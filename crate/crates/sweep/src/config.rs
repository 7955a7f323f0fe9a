//! JSON sweep configuration.
//!
//! ```json
//! {
//!   "model": {"type": "tfim", "n": 8, "periodic": true},
//!   "beta": 20.0,
//!   "control": {"name": "g", "from": 0.2, "to": 2.0, "points": 91},
//!   "pair": [0, 1],
//!   "bipartition": {"left": [0, 1, 2, 3], "right": [4, 5, 6, 7]},
//!   "threads": 4,
//!   "output_dir": "sweep_out"
//! }
//! ```
//!
//! Only `model`, `beta` and `control` are required. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use maxent_core::entanglement::Bipartition;
use maxent_core::models::{ModelKind, SpinChainSpec};
use serde::Deserialize;

use crate::error::{Result, SweepError};

pub const DEFAULT_THREADS: usize = 1;
pub const DEFAULT_PAIR: (usize, usize) = (0, 1);
pub const DEFAULT_OUTPUT_DIR: &str = "sweep_out";
pub const DEFAULT_DELTA: f64 = 1.0;
pub const MIN_POINTS: usize = 3;

/// Grid over the swept control parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlGrid {
    pub name: String,
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

impl ControlGrid {
    pub fn step(&self) -> f64 {
        (self.to - self.from) / (self.points - 1) as f64
    }

    /// `from + k·step`, with the last point pinned to `to`.
    pub fn values(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.points).map(|k| if k + 1 == self.points { self.to } else { self.from + k as f64 * h }).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub model: SpinChainSpec,
    pub beta: f64,
    pub control: ControlGrid,
    pub pair: (usize, usize),
    pub bipartition: Bipartition,
    pub threads: usize,
    pub output_dir: PathBuf,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: RawModel,
    beta: f64,
    control: RawControl,
    pair: Option<(usize, usize)>,
    bipartition: Option<RawBipartition>,
    threads: Option<usize>,
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(rename = "type")]
    kind: String,
    n: usize,
    #[serde(default)]
    periodic: bool,
    delta: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawControl {
    name: String,
    from: f64,
    to: f64,
    points: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBipartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<SweepConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| SweepError::Config(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<SweepConfig> {
    let raw: RawConfig =
        serde_json::from_str(text).map_err(|e| SweepError::Config(format!("malformed config: {e}")))?;
    validate(raw)
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> SweepError {
    SweepError::Config(format!("invalid `{field}`: {msg}"))
}

fn validate(raw: RawConfig) -> Result<SweepConfig> {
    let kind: ModelKind = raw.model.kind.parse().map_err(|e| invalid("model.type", e))?;
    let delta = raw.model.delta.unwrap_or(DEFAULT_DELTA);
    let model = SpinChainSpec::new(kind, raw.model.n, raw.model.periodic, delta).map_err(|e| invalid("model", e))?;
    let n = model.n;

    if !raw.beta.is_finite() || raw.beta <= 0.0 {
        return Err(invalid("beta", format!("must be positive and finite, got {}", raw.beta)));
    }

    let c = raw.control;
    let expected = kind.control().to_string();
    if c.name != expected {
        return Err(invalid("control.name", format!("model {kind} sweeps `{expected}`, got `{}`", c.name)));
    }
    if !c.from.is_finite() || !c.to.is_finite() {
        return Err(invalid("control.from/control.to", "bounds must be finite"));
    }
    if c.from >= c.to {
        return Err(invalid("control.from", format!("must be below control.to ({} >= {})", c.from, c.to)));
    }
    if c.points < MIN_POINTS {
        return Err(invalid("control.points", format!("need at least {MIN_POINTS} points, got {}", c.points)));
    }
    let control = ControlGrid { name: c.name, from: c.from, to: c.to, points: c.points };

    let pair = raw.pair.unwrap_or(DEFAULT_PAIR);
    if pair.0 == pair.1 || pair.0 >= n || pair.1 >= n {
        return Err(invalid("pair", format!("need two distinct sites below {n}, got [{}, {}]", pair.0, pair.1)));
    }

    let bipartition = match raw.bipartition {
        Some(b) => Bipartition::new(b.left, b.right),
        None => Bipartition::halves(n),
    };
    bipartition.transposed_range(n).map_err(|e| invalid("bipartition", e))?;

    let threads = raw.threads.unwrap_or(DEFAULT_THREADS);
    if threads == 0 {
        return Err(invalid("threads", "must be at least 1"));
    }

    Ok(SweepConfig {
        model,
        beta: raw.beta,
        control,
        pair,
        bipartition,
        threads,
        output_dir: raw.output_dir.unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR)),
    })
}
