//! Fixed noisy-readout scenarios with every parameter pinned: the
//! Bernstein–Vazirani and amplitude-estimation comparisons under one or two
//! noisy detectors, corrected with `η = 0.1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algorithms::{build_bv, build_qae, qae_estimate_table, BvInstance, QaeInstance};
use crate::channels::{pauli_channel, Axis, PauliChannel};
use crate::error::{Error, Result};
use crate::mitigation::{MitigationConfig, QuasiDistribution};
use crate::sim::{Circuit, MeasurementModel, NoiseSpec};

/// Hidden string of the BV scenarios.
pub const BV_STRING: &str = "10010001";
/// Flip weight of every scenario noise channel.
pub const NOISE_WEIGHT: f64 = 0.3;
/// `η` used by the classical correction, deliberately below the induced `0.4`.
pub const CORRECTION_ETA: f64 = 0.1;
/// Evaluation register size and amplitude of the QAE scenarios.
pub const QAE_M: usize = 7;
pub const QAE_P: f64 = 0.3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// BV(8), X-flip on qubit index 4.
    BvSingle,
    /// BV(8), X-flip on qubit indices 4 and 7.
    BvDouble,
    /// QAE(7, 0.3), Y-flip on the most significant evaluation qubit.
    QaeSingle,
    /// QAE(7, 0.3), Y-flip on the two most significant evaluation qubits.
    QaeDouble,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::BvSingle,
        Preset::BvDouble,
        Preset::QaeSingle,
        Preset::QaeDouble,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::BvSingle => "fig3-single",
            Preset::BvDouble => "fig3-double",
            Preset::QaeSingle => "fig4-single",
            Preset::QaeDouble => "fig4-double",
        }
    }

    pub fn scenario(self) -> Scenario {
        match self {
            Preset::BvSingle => bv_scenario(&[4]),
            Preset::BvDouble => bv_scenario(&[4, 7]),
            Preset::QaeSingle => qae_scenario(&[0]),
            Preset::QaeDouble => qae_scenario(&[0, 1]),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown preset '{s}'")))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What the scenario's outcome table means.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    /// Success is the weight of this bitstring.
    Bitstring(String),
    /// Outcomes are QAE `z` values over `m` bits.
    Qae { m: usize },
}

impl Target {
    /// Figure of merit of one condition: the weight of the designed
    /// bitstring, or the QAE peak-window mass.
    pub fn score(&self, q: &QuasiDistribution) -> Result<f64> {
        match self {
            Target::Bitstring(bits) => q.weight_of(bits),
            Target::Qae { m } => Ok(qae_estimate_table(q.dense()?, *m)?.window_mass),
        }
    }
}

/// A circuit with readout noise and a correction config.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub circuit: Circuit,
    pub noise: MeasurementModel,
    pub config: MitigationConfig,
    pub target: Target,
    /// Circuit qubits carrying noise, each with `noise_spec`.
    pub noisy_qubits: Vec<usize>,
    pub noise_spec: NoiseSpec,
}

/// Flip noise of weight [`NOISE_WEIGHT`] about `axis` on `qubits`, with
/// correction `η = 0.1` on the matching outcome bits.
pub fn flip_noise(
    axis: Axis,
    qubits: &[usize],
    measured: &[usize],
) -> Result<(MeasurementModel, MitigationConfig)> {
    let ch = pauli_channel(&PauliChannel::flip(axis, NOISE_WEIGHT)?);
    let model = MeasurementModel::state_noise(qubits.iter().map(|&q| (q, ch.clone())).collect())?;
    let mut eta = BTreeMap::new();
    for &q in qubits {
        let bit = measured
            .iter()
            .position(|&m| m == q)
            .ok_or_else(|| Error::InvalidArgument(format!("noisy qubit {q} is not measured")))?;
        eta.insert(bit, CORRECTION_ETA);
    }
    Ok((model, MitigationConfig::per_bit(eta)?))
}

fn bv_scenario(qubits: &[usize]) -> Scenario {
    let circuit = build_bv(&BvInstance::new(BV_STRING).expect("valid string"));
    let (noise, config) = flip_noise(Axis::X, qubits, circuit.measured()).expect("measured qubits");
    Scenario {
        circuit,
        noise,
        config,
        target: Target::Bitstring(BV_STRING.into()),
        noisy_qubits: qubits.to_vec(),
        noise_spec: NoiseSpec::Flip {
            axis: Axis::X,
            p: NOISE_WEIGHT,
        },
    }
}

/// QAE scenario with Y-flip noise on the listed circuit qubits.
pub fn qae_scenario(qubits: &[usize]) -> Scenario {
    let circuit = build_qae(&QaeInstance::new(QAE_M, QAE_P).expect("valid instance"));
    let (noise, config) = flip_noise(Axis::Y, qubits, circuit.measured()).expect("measured qubits");
    Scenario {
        circuit,
        noise,
        config,
        target: Target::Qae { m: QAE_M },
        noisy_qubits: qubits.to_vec(),
        noise_spec: NoiseSpec::Flip {
            axis: Axis::Y,
            p: NOISE_WEIGHT,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("fig5".parse::<Preset>().is_err());
    }

    #[test]
    fn eta_only_on_noisy_bits() {
        let s = Preset::BvDouble.scenario();
        assert_eq!(s.config.eta(4), 0.1);
        assert_eq!(s.config.eta(7), 0.1);
        assert_eq!(s.config.eta(0), 0.0);
    }
}
