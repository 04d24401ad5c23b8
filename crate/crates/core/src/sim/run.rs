use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::circuit::Circuit;
use super::distribution::{Distribution, SUM_TOL};
use super::histogram::{Histogram, Sampler};
use super::measurement::{noisy_povm, povm_readout_kraus, MeasurementMode, MeasurementModel};
use crate::channels::TwirlSet;
use crate::error::{Error, Result};
use crate::qcore::DensityMatrix;

/// Final state of `circ` from `|0…0⟩`, with the model's state noise applied
/// at the noise site.
pub fn final_state(circ: &Circuit, meas: &MeasurementModel) -> Result<DensityMatrix> {
    meas.check_range(circ.n_qubits())?;
    circ.evolve(DensityMatrix::zero_state(circ.n_qubits()), |rho| {
        meas.apply_state_noise(rho)
    })
}

/// Outcome distribution of measuring `measured` on `state`, each listed
/// qubit through its (possibly noisy) detector.
pub(crate) fn measure_exact(
    state: &DensityMatrix,
    measured: &[usize],
    meas: &MeasurementModel,
) -> Result<Distribution> {
    let mut reduced = state.partial_trace(measured)?;
    for (k, q) in measured.iter().enumerate() {
        if let Some(ch) = meas.detector_channels().get(q) {
            reduced = reduced.apply_kraus(&povm_readout_kraus(&noisy_povm(ch)), &[k])?;
        }
    }
    let probs = reduced.probabilities();
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::Invariant(format!(
            "outcome probabilities sum to {sum}"
        )));
    }
    Distribution::new(measured.len(), probs)
}

/// Exact joint distribution over the measured qubits.
///
/// State noise acts at the circuit's noise site (after the last operation
/// if there is none). Detector noise replaces each projector `|x⟩⟨x|` by
/// `Λ†[|x⟩⟨x|]`, so `P(x) = tr[(⊗ₖ Λₖ†[M_{xₖ}]) ρ]`.
pub fn run_exact(circ: &Circuit, meas: &MeasurementModel) -> Result<Distribution> {
    if !circ.has_measurement() {
        return Err(Error::NoMeasurement);
    }
    let rho = final_state(circ, meas)?;
    measure_exact(&rho, circ.measured(), meas)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwirlMode {
    /// Average of the three branch distributions.
    ExactAverage,
    /// One twirl element drawn per shot, shared by all qubits.
    PerShot { shots: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum TwirlOutput {
    Exact(Distribution),
    Sampled(Histogram),
}

impl TwirlOutput {
    /// The exact table, or the empirical one for sampled runs.
    pub fn distribution(&self) -> Distribution {
        match self {
            TwirlOutput::Exact(d) => d.clone(),
            TwirlOutput::Sampled(h) => h.to_distribution(),
        }
    }
}

/// The three branch circuits `G ⊗ … ⊗ G` / noise / `G† ⊗ … ⊗ G†`.
pub(crate) fn twirl_branches(circ: &Circuit, set: &TwirlSet) -> Result<[Circuit; 3]> {
    let g = set.gates();
    Ok([
        circ.with_premeasure_layers(g[0], g[0].dagger())?,
        circ.with_premeasure_layers(g[1], g[1].dagger())?,
        circ.with_premeasure_layers(g[2], g[2].dagger())?,
    ])
}

/// Index of the twirl element used by each shot: uniform over `{0, 1, 2}`,
/// drawn from stream 1 of a ChaCha20 generator seeded with `seed`.
pub fn twirl_schedule(shots: u64, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(1);
    (0..shots).map(|_| rng.random_range(0..3)).collect()
}

/// Runs `circ` with the collective twirl wrapped around the span between
/// the last gate and measurement. Only state noise can be twirled.
pub fn run_with_twirl(
    circ: &Circuit,
    meas: &MeasurementModel,
    set: &TwirlSet,
    mode: TwirlMode,
) -> Result<TwirlOutput> {
    if matches!(
        meas.mode(),
        MeasurementMode::DetectorNoise | MeasurementMode::Combined
    ) {
        return Err(Error::TwirlInDetectorMode);
    }
    let branches = twirl_branches(circ, set)?;
    let dists = branches
        .iter()
        .map(|b| run_exact(b, meas))
        .collect::<Result<Vec<_>>>()?;
    match mode {
        TwirlMode::ExactAverage => {
            let w = 1.0 / 3.0;
            Ok(TwirlOutput::Exact(Distribution::mixture(&[
                (w, &dists[0]),
                (w, &dists[1]),
                (w, &dists[2]),
            ])?))
        }
        TwirlMode::PerShot { shots, seed } => {
            Ok(TwirlOutput::Sampled(sample_schedule(&dists, shots, seed)?))
        }
    }
}

/// Per-shot sampling where shot `i` is drawn from branch `schedule[i]`.
/// Outcomes use stream 0 of the seeded generator, the schedule stream 1.
pub(crate) fn sample_schedule(
    branches: &[Distribution],
    shots: u64,
    seed: u64,
) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let samplers: Vec<Sampler> = branches.iter().map(Sampler::new).collect();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; branches[0].probs().len()];
    for g in twirl_schedule(shots, seed) {
        counts[samplers[g].draw(&mut rng)] += 1;
    }
    Histogram::from_index_counts(branches[0].n_bits(), &counts)
}
