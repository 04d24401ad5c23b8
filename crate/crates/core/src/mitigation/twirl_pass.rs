use crate::channels::TwirlSet;
use crate::error::Result;
use crate::sim::{run_exact, sample_schedule, twirl_branches, twirl_schedule};
use crate::sim::{Circuit, Distribution, Histogram, MeasurementModel};

/// The three branch circuits of the pre-measurement twirl: for each `G` in
/// the set, `G^{⊗n}` on the measured qubits after the last gate and
/// `(G†)^{⊗n}` just before measurement.
pub fn premeasure_twirl_pass(circ: &Circuit, set: &TwirlSet) -> Result<[Circuit; 3]> {
    twirl_branches(circ, set)
}

/// Branch circuits plus a per-shot assignment of branches.
#[derive(Clone, Debug, PartialEq)]
pub struct TwirlSchedule {
    pub branches: [Circuit; 3],
    /// Branch index of each shot.
    pub assignment: Vec<usize>,
}

impl TwirlSchedule {
    /// Shots assigned to each branch.
    pub fn branch_shots(&self) -> [u64; 3] {
        let mut n = [0u64; 3];
        for &g in &self.assignment {
            n[g] += 1;
        }
        n
    }
}

/// Randomized per-shot form of [`premeasure_twirl_pass`]; the assignment
/// is [`twirl_schedule`]`(shots, seed)`.
pub fn premeasure_twirl_schedule(
    circ: &Circuit,
    set: &TwirlSet,
    shots: u64,
    seed: u64,
) -> Result<TwirlSchedule> {
    Ok(TwirlSchedule {
        branches: premeasure_twirl_pass(circ, set)?,
        assignment: twirl_schedule(shots, seed),
    })
}

/// Equal-weight average of the exact branch distributions.
pub fn average_branches(branches: &[Circuit; 3], meas: &MeasurementModel) -> Result<Distribution> {
    let d = branches
        .iter()
        .map(|b| run_exact(b, meas))
        .collect::<Result<Vec<_>>>()?;
    let w = 1.0 / 3.0;
    Distribution::mixture(&[(w, &d[0]), (w, &d[1]), (w, &d[2])])
}

/// Samples a schedule: shot `i` is drawn from branch `assignment[i]`.
pub fn sample_branches(
    branches: &[Circuit; 3],
    meas: &MeasurementModel,
    shots: u64,
    seed: u64,
) -> Result<Histogram> {
    let d = branches
        .iter()
        .map(|b| run_exact(b, meas))
        .collect::<Result<Vec<_>>>()?;
    sample_schedule(&d, shots, seed)
}
