use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::NegativePolicy;
use super::quasi::QuasiDistribution;
use crate::error::{Error, Result};
use crate::sim::Histogram;

/// Counts file: `{"counts": {bitstring: int}, "shots": int, "eta": {qubit: real}}`
/// with `eta` optional and keyed by bit position.
#[derive(Clone, Debug, PartialEq)]
pub struct CountsFile {
    pub histogram: Histogram,
    pub eta: Option<BTreeMap<usize, f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CountsJson {
    counts: BTreeMap<String, u64>,
    shots: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eta: Option<BTreeMap<String, f64>>,
}

/// Parses a counts file. JSON syntax errors carry line and column.
pub fn parse_counts_json(text: &str) -> Result<CountsFile> {
    let raw: CountsJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let histogram = Histogram::from_counts(raw.counts, raw.shots)?;
    let eta = raw
        .eta
        .map(|m| {
            m.into_iter()
                .map(|(k, v)| {
                    let q: usize = k
                        .parse()
                        .map_err(|_| Error::Json(format!("eta key '{k}' is not a qubit index")))?;
                    if q >= histogram.n_bits() {
                        return Err(Error::QubitOutOfRange {
                            index: q,
                            n_qubits: histogram.n_bits(),
                        });
                    }
                    Ok((q, v))
                })
                .collect::<Result<BTreeMap<_, _>>>()
        })
        .transpose()?;
    Ok(CountsFile { histogram, eta })
}

/// Serializes a counts file, the inverse of [`parse_counts_json`].
pub fn counts_to_json(file: &CountsFile) -> String {
    let raw = CountsJson {
        counts: file.histogram.counts().clone(),
        shots: file.histogram.shots(),
        eta: file
            .eta
            .as_ref()
            .map(|m| m.iter().map(|(k, v)| (k.to_string(), *v)).collect()),
    };
    serde_json::to_string_pretty(&raw).expect("plain map serializes")
}

#[derive(Serialize)]
struct CorrectedJson<'a> {
    weights: BTreeMap<String, f64>,
    policy: &'a str,
    tv_clip_loss: f64,
}

/// `{"weights": {bitstring: real}, "policy": string, "tv_clip_loss": real}`.
pub fn corrected_to_json(
    q: &QuasiDistribution,
    policy: NegativePolicy,
    tv_clip_loss: f64,
) -> String {
    serde_json::to_string_pretty(&CorrectedJson {
        weights: q.to_map(),
        policy: &policy.to_string(),
        tv_clip_loss,
    })
    .expect("plain map serializes")
}
