use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::channels::Channel;
use crate::error::{Error, Result};
use crate::qcore::{DensityMatrix, Operator, C64};

/// Where the per-qubit readout noise is placed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasurementMode {
    Ideal,
    /// Noise acts on the state just before a perfect detector.
    StateNoise,
    /// The detector is noisy: the POVM becomes `{Λ†[|x⟩⟨x|]}`.
    DetectorNoise,
    /// Both, composed as state noise followed by detector noise.
    Combined,
}

/// Per-qubit single-qubit noise on the state and on the detector, keyed by
/// circuit qubit index. Qubits without an entry are noiseless.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MeasurementModel {
    state_noise: BTreeMap<usize, Channel>,
    detector_noise: BTreeMap<usize, Channel>,
}

fn check_single(map: &BTreeMap<usize, Channel>) -> Result<()> {
    match map.values().find(|ch| ch.n_qubits() != 1) {
        Some(ch) => Err(Error::NotSingleQubit(ch.n_qubits())),
        None => Ok(()),
    }
}

impl MeasurementModel {
    pub fn ideal() -> Self {
        Self::default()
    }

    pub fn state_noise(noise: BTreeMap<usize, Channel>) -> Result<Self> {
        Self::combined(noise, BTreeMap::new())
    }

    pub fn detector_noise(noise: BTreeMap<usize, Channel>) -> Result<Self> {
        Self::combined(BTreeMap::new(), noise)
    }

    pub fn combined(
        state_noise: BTreeMap<usize, Channel>,
        detector_noise: BTreeMap<usize, Channel>,
    ) -> Result<Self> {
        check_single(&state_noise)?;
        check_single(&detector_noise)?;
        Ok(MeasurementModel {
            state_noise,
            detector_noise,
        })
    }

    pub fn mode(&self) -> MeasurementMode {
        match (self.state_noise.is_empty(), self.detector_noise.is_empty()) {
            (true, true) => MeasurementMode::Ideal,
            (false, true) => MeasurementMode::StateNoise,
            (true, false) => MeasurementMode::DetectorNoise,
            (false, false) => MeasurementMode::Combined,
        }
    }

    pub fn state_channels(&self) -> &BTreeMap<usize, Channel> {
        &self.state_noise
    }

    pub fn detector_channels(&self) -> &BTreeMap<usize, Channel> {
        &self.detector_noise
    }

    /// The same noise moved onto the detector.
    pub fn as_detector_noise(&self) -> Self {
        MeasurementModel {
            state_noise: BTreeMap::new(),
            detector_noise: self.state_noise.clone(),
        }
    }

    pub(crate) fn check_range(&self, n_qubits: usize) -> Result<()> {
        let bad = self
            .state_noise
            .keys()
            .chain(self.detector_noise.keys())
            .find(|&&q| q >= n_qubits);
        match bad {
            Some(&index) => Err(Error::QubitOutOfRange { index, n_qubits }),
            None => Ok(()),
        }
    }

    pub(crate) fn apply_state_noise(&self, mut state: DensityMatrix) -> Result<DensityMatrix> {
        for (&q, ch) in &self.state_noise {
            state = state.apply_kraus(ch.kraus(), &[q])?;
        }
        Ok(state)
    }
}

/// The noisy POVM `{Λ†[|0⟩⟨0|], Λ†[|1⟩⟨1|]}` of a single-qubit detector.
pub fn noisy_povm(ch: &Channel) -> [Operator; 2] {
    let dual = ch.adjoint();
    [0, 1].map(|x| dual.apply(&Operator::projector(x, 2)))
}

/// Kraus form of the measure-and-prepare map
/// `ρ ↦ Σ_x tr[A_x ρ] |x⟩⟨x|` for a two-outcome POVM. Its output diagonal
/// carries the outcome probabilities of the POVM.
pub(crate) fn povm_readout_kraus(povm: &[Operator; 2]) -> Vec<Operator> {
    let mut kraus = Vec::new();
    for (x, a) in povm.iter().enumerate() {
        let herm = (a.matrix() + a.matrix().adjoint()) * C64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm);
        for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda <= 0.0 {
                continue;
            }
            let v = eig.eigenvectors.column(i);
            let s = lambda.sqrt();
            let m = DMatrix::from_fn(2, 2, |r, col| {
                if r == x {
                    v[col].conj() * s
                } else {
                    C64::new(0.0, 0.0)
                }
            });
            kraus.push(Operator::from_matrix(m).expect("square"));
        }
    }
    kraus
}
