//! TOML run configuration. Every table rejects unknown keys.
//!
//! ```toml
//! mode = "sampled"          # exact | sampled
//! shots = 8192
//! seed = 7
//! out = "results"           # relative to the config file
//!
//! [algorithm]
//! name = "bv"               # bv | qae | deutsch | circuit
//! s = "10010001"
//!
//! [[noise]]
//! qubit = 4
//! placement = "state"       # state | detector
//! channel = { kind = "flip", axis = "x", p = 0.3 }
//!
//! [mitigation]
//! eta = { "4" = 0.1 }       # keyed by outcome bit
//! default_eta = 0.0
//! policy = "quasi"          # quasi | clip_renormalize
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;
use twirlmit::sim::NoiseSpec;

use crate::args::Mode;

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub n_qubits: Option<usize>,
    pub algorithm: Option<AlgorithmConfig>,
    #[serde(default)]
    pub noise: Vec<NoiseEntry>,
    pub mitigation: Option<MitigationSection>,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(tag = "name", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgorithmConfig {
    Bv { s: String, n: Option<usize> },
    Qae { m: usize, p: f64 },
    Deutsch { case: String },
    Circuit { path: PathBuf },
}

#[derive(Deserialize, Debug, Clone, Copy, Default, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    #[default]
    State,
    Detector,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct NoiseEntry {
    pub qubit: usize,
    #[serde(default)]
    pub placement: Placement,
    pub channel: NoiseSpec,
}

#[derive(Deserialize, Debug, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct MitigationSection {
    #[serde(default)]
    pub eta: BTreeMap<String, f64>,
    pub default_eta: Option<f64>,
    pub preset: Option<String>,
    pub policy: Option<String>,
}

/// Reads and validates a config file. Relative paths inside it are
/// resolved against its directory.
pub fn load(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let mut cfg: RunConfig =
        toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    if let Some(AlgorithmConfig::Circuit { path: p }) = &mut cfg.algorithm {
        if p.is_relative() {
            *p = base.join(&*p);
        }
    }
    if let Some(out) = &mut cfg.out {
        if out.is_relative() {
            *out = base.join(&*out);
        }
    }
    Ok(cfg)
}

pub fn load_opt(path: Option<&Path>) -> Result<RunConfig> {
    path.map(load).transpose().map(Option::unwrap_or_default)
}
