use crate::error::{Error, Result};
use crate::qcore::Gate;
use crate::sim::{run_exact, sample, Circuit, Histogram, MeasurementModel};

/// Per-qubit readout error estimates from the two basis-state circuits.
#[derive(Clone, Debug, PartialEq)]
pub struct Calibration {
    /// `P(1 | prepared 0)` per qubit.
    pub eps0: Vec<f64>,
    /// `P(0 | prepared 1)` per qubit.
    pub eps1: Vec<f64>,
    /// `η̂ = ε₀ + ε₁`, the symmetric-noise estimate.
    pub eta: Vec<f64>,
    /// `|ε₀ − ε₁|`; large values mean the noise is not depolarizing-like.
    pub asymmetry: Vec<f64>,
}

/// The empty circuit and the all-`X` circuit on `n` qubits, both measuring
/// every qubit.
pub fn calibration_circuits(n_qubits: usize) -> [Circuit; 2] {
    let mut zero = Circuit::new(n_qubits).named("calibrate-0", "all qubits in |0>");
    zero.measure_all();
    let mut ones = Circuit::new(n_qubits).named("calibrate-1", "all qubits in |1>");
    ones.layer(Gate::X, &(0..n_qubits).collect::<Vec<_>>())
        .expect("in range")
        .measure_all();
    [zero, ones]
}

/// Estimates `η` per qubit by running the two calibration circuits through
/// `runner(circuit, shots, seed)`. The zero circuit gets `seed`, the ones
/// circuit `seed + 1`.
pub fn calibrate_eta<F>(
    mut runner: F,
    n_qubits: usize,
    shots: u64,
    seed: u64,
) -> Result<Calibration>
where
    F: FnMut(&Circuit, u64, u64) -> Result<Histogram>,
{
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let [zero, ones] = calibration_circuits(n_qubits);
    let h0 = runner(&zero, shots, seed)?.to_distribution();
    let h1 = runner(&ones, shots, seed.wrapping_add(1))?.to_distribution();
    let mut cal = Calibration {
        eps0: Vec::with_capacity(n_qubits),
        eps1: Vec::with_capacity(n_qubits),
        eta: Vec::with_capacity(n_qubits),
        asymmetry: Vec::with_capacity(n_qubits),
    };
    for k in 0..n_qubits {
        let e0 = h0.marginal(k)?.1;
        let e1 = h1.marginal(k)?.0;
        cal.eps0.push(e0);
        cal.eps1.push(e1);
        cal.eta.push(e0 + e1);
        cal.asymmetry.push((e0 - e1).abs());
    }
    Ok(cal)
}

/// A runner backed by the built-in simulator with the given readout noise.
pub fn simulator_runner(
    meas: MeasurementModel,
) -> impl FnMut(&Circuit, u64, u64) -> Result<Histogram> {
    move |c, shots, seed| sample(&run_exact(c, &meas)?, shots, seed)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::channels::{depolarizing, pauli_channel, Axis, PauliChannel};

    #[test]
    fn noiseless() {
        let cal = calibrate_eta(simulator_runner(MeasurementModel::ideal()), 3, 1000, 1).unwrap();
        assert_eq!(cal.eta, vec![0.0; 3]);
    }

    #[test]
    fn x_flip_is_symmetric() {
        let ch = pauli_channel(&PauliChannel::flip(Axis::X, 0.3).unwrap());
        let meas = MeasurementModel::state_noise(BTreeMap::from([(0, ch)])).unwrap();
        let cal = calibrate_eta(simulator_runner(meas), 2, 20000, 4).unwrap();
        assert!((cal.eta[0] - 0.6).abs() < 0.03);
        assert!(cal.asymmetry[0] < 0.03);
        assert_eq!(cal.eta[1], 0.0);
    }

    #[test]
    fn depolarizing_point_four() {
        let ch = depolarizing(0.4).unwrap();
        let meas =
            MeasurementModel::state_noise(BTreeMap::from([(0, ch.clone()), (1, ch)])).unwrap();
        let cal = calibrate_eta(simulator_runner(meas), 2, 100_000, 9).unwrap();
        for e in &cal.eta {
            assert!((0.39..=0.41).contains(e), "{e}");
        }
    }

    #[test]
    fn zero_shots() {
        assert_eq!(
            calibrate_eta(simulator_runner(MeasurementModel::ideal()), 1, 0, 0),
            Err(Error::ZeroShots)
        );
    }
}
