use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channels::TwirlSet;
use crate::error::{Error, Result};

/// What to do with negative weights left by the inverse map.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NegativePolicy {
    /// Keep the signed weights; they still sum to one.
    #[default]
    Quasi,
    /// Clip negatives to zero and renormalize.
    ClipRenormalize,
}

impl FromStr for NegativePolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quasi" => Ok(NegativePolicy::Quasi),
            "clip_renormalize" | "clip" => Ok(NegativePolicy::ClipRenormalize),
            _ => Err(Error::InvalidArgument(format!(
                "unknown negative policy '{s}'"
            ))),
        }
    }
}

impl fmt::Display for NegativePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NegativePolicy::Quasi => "quasi",
            NegativePolicy::ClipRenormalize => "clip_renormalize",
        })
    }
}

fn check_eta(eta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&eta) {
        return Err(Error::InvalidEta(eta));
    }
    Ok(eta)
}

/// Per-bit depolarization strengths for the classical correction, plus the
/// twirl set and negative-weight policy.
///
/// `eta` is keyed by outcome bit position (0 = leftmost); bits without an
/// entry use `default_eta`. Every value lies in `[0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MitigationConfig {
    eta: BTreeMap<usize, f64>,
    default_eta: f64,
    twirl_set: TwirlSet,
    negative_policy: NegativePolicy,
}

impl Default for MitigationConfig {
    fn default() -> Self {
        MitigationConfig {
            eta: BTreeMap::new(),
            default_eta: 0.0,
            twirl_set: TwirlSet::standard(),
            negative_policy: NegativePolicy::Quasi,
        }
    }
}

impl MitigationConfig {
    /// Same `η` on every bit.
    pub fn uniform(eta: f64) -> Result<Self> {
        Ok(MitigationConfig {
            default_eta: check_eta(eta)?,
            ..Default::default()
        })
    }

    /// `η` on the listed bits only, zero elsewhere.
    pub fn per_bit(eta: BTreeMap<usize, f64>) -> Result<Self> {
        for &e in eta.values() {
            check_eta(e)?;
        }
        Ok(MitigationConfig {
            eta,
            ..Default::default()
        })
    }

    /// `η = 0.02` everywhere.
    pub fn ibm_low() -> Self {
        MitigationConfig::uniform(0.02).expect("in range")
    }

    /// `η = 0.05` everywhere.
    pub fn ibm_high() -> Self {
        MitigationConfig::uniform(0.05).expect("in range")
    }

    /// `"ibm-low"` or `"ibm-high"`.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "ibm-low" => Ok(MitigationConfig::ibm_low()),
            "ibm-high" => Ok(MitigationConfig::ibm_high()),
            _ => Err(Error::InvalidArgument(format!(
                "unknown eta preset '{name}'"
            ))),
        }
    }

    pub fn with_default_eta(mut self, eta: f64) -> Result<Self> {
        self.default_eta = check_eta(eta)?;
        Ok(self)
    }

    pub fn with_eta(mut self, bit: usize, eta: f64) -> Result<Self> {
        self.eta.insert(bit, check_eta(eta)?);
        Ok(self)
    }

    pub fn with_policy(mut self, policy: NegativePolicy) -> Self {
        self.negative_policy = policy;
        self
    }

    pub fn with_twirl_set(mut self, set: TwirlSet) -> Self {
        self.twirl_set = set;
        self
    }

    pub fn eta(&self, bit: usize) -> f64 {
        self.eta.get(&bit).copied().unwrap_or(self.default_eta)
    }

    pub fn eta_map(&self) -> &BTreeMap<usize, f64> {
        &self.eta
    }

    pub fn default_eta(&self) -> f64 {
        self.default_eta
    }

    pub fn twirl_set(&self) -> &TwirlSet {
        &self.twirl_set
    }

    pub fn negative_policy(&self) -> NegativePolicy {
        self.negative_policy
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        assert_eq!(MitigationConfig::preset("ibm-low").unwrap().eta(3), 0.02);
        assert_eq!(MitigationConfig::preset("ibm-high").unwrap().eta(0), 0.05);
        assert!(MitigationConfig::preset("ibm-mid").is_err());
    }

    #[test]
    fn per_bit_overrides_default() {
        let cfg = MitigationConfig::uniform(0.1)
            .unwrap()
            .with_eta(2, 0.3)
            .unwrap();
        assert_eq!(cfg.eta(0), 0.1);
        assert_eq!(cfg.eta(2), 0.3);
    }

    #[test]
    fn eta_range() {
        assert_eq!(MitigationConfig::uniform(1.0), Err(Error::InvalidEta(1.0)));
        assert!(MitigationConfig::per_bit(BTreeMap::from([(0, -0.1)])).is_err());
    }

    #[test]
    fn policy_names() {
        for p in [NegativePolicy::Quasi, NegativePolicy::ClipRenormalize] {
            assert_eq!(p.to_string().parse::<NegativePolicy>().unwrap(), p);
        }
    }
}
