use super::kraus::Channel;
use super::pauli::{pauli_channel, Axis, PauliChannel};
use crate::error::Result;
use crate::qcore::{Gate, Operator};
use crate::sim::Circuit;

/// Noise realized by an ancilla: `|0⟩` ancilla, `Ry(θ)` on it, then the
/// axis Pauli controlled by the ancilla. Discarding the ancilla leaves
/// `(1 − p) ρ + p σρσ` with `p = sin²(θ/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseFragment {
    pub axis: Axis,
    pub theta: f64,
}

impl NoiseFragment {
    pub fn weight(&self) -> f64 {
        (self.theta / 2.0).sin().powi(2)
    }

    /// Two-qubit circuit: qubit 0 is the system, qubit 1 the ancilla.
    pub fn circuit(&self) -> Circuit {
        let mut c = Circuit::new(2);
        self.append_to(&mut c, 0, 1)
            .expect("two distinct in-range qubits");
        c
    }

    /// Appends the gates onto `circ`; `ancilla` must be in `|0⟩` and unused afterwards.
    pub fn append_to(&self, circ: &mut Circuit, system: usize, ancilla: usize) -> Result<()> {
        circ.gate(Gate::Ry(self.theta), &[ancilla])?
            .gate(self.axis.controlled_gate(), &[ancilla, system])?;
        Ok(())
    }

    /// System map obtained by tracing out the ancilla:
    /// `K_a[s', s] = ⟨s' a| U |s 0⟩`.
    pub fn induced_channel(&self) -> Result<Channel> {
        let u = self.circuit().unitary()?;
        let kraus = (0..2)
            .map(|a| {
                let m = nalgebra::DMatrix::from_fn(2, 2, |sp, s| u.get(sp * 2 + a, s * 2));
                Operator::from_matrix(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Channel::new(kraus)
    }

    /// The Pauli channel the fragment is meant to realize.
    pub fn target_channel(&self) -> Channel {
        pauli_channel(&PauliChannel::flip(self.axis, self.weight()).expect("sin² lies in [0, 1]"))
    }
}

pub fn noise_circuit_fragment(axis: Axis, theta: f64) -> NoiseFragment {
    NoiseFragment { axis, theta }
}
