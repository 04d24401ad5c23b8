use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use twirlmit::channels::Channel;
use twirlmit::sim::{parse_param, MeasurementModel, NoiseSpec};

use crate::config::{NoiseEntry, Placement};

/// Parses `QUBIT:CHANNEL:P1,P2,...`.
pub fn parse_noise_flag(flag: &str, detector: bool) -> Result<NoiseEntry> {
    let parts: Vec<&str> = flag.split(':').collect();
    let [q, name, params] = parts.as_slice() else {
        bail!("noise '{flag}' is not QUBIT:CHANNEL:PARAMS");
    };
    let qubit = q
        .parse()
        .map_err(|_| anyhow!("noise '{flag}': '{q}' is not a qubit index"))?;
    let params = params
        .split(',')
        .map(|t| {
            parse_param(t.trim()).ok_or_else(|| anyhow!("noise '{flag}': bad parameter '{t}'"))
        })
        .collect::<Result<Vec<f64>>>()?;
    let channel = NoiseSpec::from_name(name, &params).with_context(|| format!("noise '{flag}'"))?;
    Ok(NoiseEntry {
        qubit,
        placement: if detector {
            Placement::Detector
        } else {
            Placement::State
        },
        channel,
    })
}

/// Flag entries replace config entries when any are given.
pub fn entries(config: &[NoiseEntry], flags: &[String], detector: bool) -> Result<Vec<NoiseEntry>> {
    if flags.is_empty() {
        return Ok(config.to_vec());
    }
    flags
        .iter()
        .map(|f| parse_noise_flag(f, detector))
        .collect()
}

/// Measurement model of the entries. One channel per qubit and placement.
pub fn model(entries: &[NoiseEntry]) -> Result<MeasurementModel> {
    let mut state: BTreeMap<usize, Channel> = BTreeMap::new();
    let mut det: BTreeMap<usize, Channel> = BTreeMap::new();
    for e in entries {
        let map = match e.placement {
            Placement::State => &mut state,
            Placement::Detector => &mut det,
        };
        if map.insert(e.qubit, e.channel.channel()?).is_some() {
            bail!("qubit {} has two {:?} noise entries", e.qubit, e.placement);
        }
    }
    Ok(match (state.is_empty(), det.is_empty()) {
        (true, true) => MeasurementModel::ideal(),
        (false, true) => MeasurementModel::state_noise(state)?,
        (true, false) => MeasurementModel::detector_noise(det)?,
        (false, false) => MeasurementModel::combined(state, det)?,
    })
}
