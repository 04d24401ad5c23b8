use serde::{Deserialize, Serialize};

use crate::channels::{depolarizing, pauli_channel, Axis, Channel, PauliChannel};
use crate::error::{Error, Result};
use crate::qcore::{check_targets, DensityMatrix, Gate, Operator, StateVector};

/// A single-qubit noise channel referenced by name and parameters, so that
/// circuits and config files can describe noise without Kraus matrices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NoiseSpec {
    Depolarizing {
        eta: f64,
    },
    Pauli {
        p0: f64,
        px: f64,
        py: f64,
        pz: f64,
    },
    /// `(1 − p) ρ + p σρσ`.
    Flip {
        axis: Axis,
        p: f64,
    },
    /// Flip of weight `sin²(θ/2)`, the parameterization of the ancilla construction.
    FlipAngle {
        axis: Axis,
        theta: f64,
    },
}

impl NoiseSpec {
    pub fn pauli(&self) -> Result<PauliChannel> {
        match *self {
            NoiseSpec::Depolarizing { eta } => PauliChannel::depolarizing(eta),
            NoiseSpec::Pauli { p0, px, py, pz } => PauliChannel::new(p0, px, py, pz),
            NoiseSpec::Flip { axis, p } => PauliChannel::flip(axis, p),
            NoiseSpec::FlipAngle { axis, theta } => {
                PauliChannel::flip(axis, (theta / 2.0).sin().powi(2))
            }
        }
    }

    pub fn channel(&self) -> Result<Channel> {
        match *self {
            NoiseSpec::Depolarizing { eta } => depolarizing(eta),
            _ => Ok(pauli_channel(&self.pauli()?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    Gate {
        gate: Gate,
        targets: Vec<usize>,
    },
    /// Explicit noise inserted by the builder.
    Noise {
        noise: NoiseSpec,
        target: usize,
    },
    /// Marks where the state noise of a measurement model acts. Without a
    /// marker that noise acts after the last operation.
    NoiseSite,
}

/// An ordered program over `n` qubits with a terminal measurement.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<Op>,
    measured: Vec<usize>,
    name: String,
    description: String,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            ..Default::default()
        }
    }

    pub fn named(mut self, name: impl Into<String>, description: impl Into<String>) -> Self {
        self.name = name.into();
        self.description = description.into();
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn measured(&self) -> &[usize] {
        &self.measured
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn has_measurement(&self) -> bool {
        !self.measured.is_empty()
    }

    pub fn gate(&mut self, gate: Gate, targets: &[usize]) -> Result<&mut Self> {
        check_targets(targets, self.n_qubits)?;
        if gate.arity() != targets.len() {
            return Err(Error::ArityMismatch {
                expected: gate.arity(),
                actual: targets.len(),
            });
        }
        self.ops.push(Op::Gate {
            gate,
            targets: targets.to_vec(),
        });
        Ok(self)
    }

    /// Applies `gate` to each listed qubit.
    pub fn layer(&mut self, gate: Gate, qubits: &[usize]) -> Result<&mut Self> {
        for &q in qubits {
            self.gate(gate, &[q])?;
        }
        Ok(self)
    }

    pub fn noise(&mut self, noise: NoiseSpec, target: usize) -> Result<&mut Self> {
        check_targets(&[target], self.n_qubits)?;
        noise.pauli()?;
        self.ops.push(Op::Noise { noise, target });
        Ok(self)
    }

    pub fn noise_site(&mut self) -> &mut Self {
        self.ops.push(Op::NoiseSite);
        self
    }

    /// Sets the terminal measurement. Bit `k` of every outcome is qubit `qubits[k]`.
    pub fn measure(&mut self, qubits: &[usize]) -> Result<&mut Self> {
        check_targets(qubits, self.n_qubits)?;
        self.measured = qubits.to_vec();
        Ok(self)
    }

    pub fn measure_all(&mut self) -> &mut Self {
        self.measured = (0..self.n_qubits).collect();
        self
    }

    /// Index of the last gate, the point after which pre-measurement
    /// layers are inserted.
    pub fn last_gate_index(&self) -> Option<usize> {
        self.ops
            .iter()
            .rposition(|op| matches!(op, Op::Gate { .. }))
    }

    /// The circuit with `before` applied to every measured qubit right after
    /// the last gate and `after` applied right before measurement. Trailing
    /// noise and the noise site end up between the two layers.
    pub fn with_premeasure_layers(&self, before: Gate, after: Gate) -> Result<Circuit> {
        if !self.has_measurement() {
            return Err(Error::NoMeasurement);
        }
        let split = self.last_gate_index().map_or(0, |i| i + 1);
        let mut out = Circuit {
            ops: self.ops[..split].to_vec(),
            ..self.clone()
        };
        let measured = self.measured.clone();
        out.layer(before, &measured)?;
        out.ops.extend_from_slice(&self.ops[split..]);
        if !self.ops[split..].contains(&Op::NoiseSite) {
            out.noise_site();
        }
        out.layer(after, &measured)?;
        Ok(out)
    }

    /// Unitary of the gate sequence; fails if the circuit contains noise.
    pub fn unitary(&self) -> Result<Operator> {
        let dim = 1usize << self.n_qubits;
        let mut columns = Vec::with_capacity(dim);
        for basis in 0..dim {
            let mut psi = StateVector::basis(self.n_qubits, basis);
            for op in &self.ops {
                match op {
                    Op::Gate { gate, targets } => psi = psi.apply_gate(&gate.matrix(), targets)?,
                    Op::Noise { .. } => {
                        return Err(Error::InvalidArgument(
                            "circuit with noise has no unitary".into(),
                        ))
                    }
                    Op::NoiseSite => {}
                }
            }
            columns.push(psi);
        }
        let m = nalgebra::DMatrix::from_fn(dim, dim, |r, col| columns[col].amplitudes()[r]);
        Operator::from_matrix(m)
    }

    /// Runs the gates and explicit noise on `state`, calling `at_site` at
    /// the noise site (or at the end when there is none).
    pub(crate) fn evolve(
        &self,
        mut state: DensityMatrix,
        mut at_site: impl FnMut(DensityMatrix) -> Result<DensityMatrix>,
    ) -> Result<DensityMatrix> {
        let mut site_seen = false;
        for op in &self.ops {
            state = match op {
                Op::Gate { gate, targets } => state.apply_gate(&gate.matrix(), targets)?,
                Op::Noise { noise, target } => {
                    state.apply_kraus(noise.channel()?.kraus(), &[*target])?
                }
                Op::NoiseSite if !site_seen => {
                    site_seen = true;
                    at_site(state)?
                }
                Op::NoiseSite => state,
            };
        }
        if !site_seen {
            state = at_site(state)?;
        }
        Ok(state)
    }

    pub(crate) fn push_op(&mut self, op: Op) {
        self.ops.push(op);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_checks_indices() {
        let mut c = Circuit::new(2);
        assert!(c.gate(Gate::H, &[2]).is_err());
        assert!(c.gate(Gate::Cx, &[0]).is_err());
        assert!(c.gate(Gate::Cx, &[1, 1]).is_err());
        assert!(c.measure(&[0, 0]).is_err());
        assert!(c
            .noise(
                NoiseSpec::Flip {
                    axis: Axis::X,
                    p: 2.0
                },
                0
            )
            .is_err());
    }

    #[test]
    fn premeasure_layers_wrap_trailing_noise() {
        let mut c = Circuit::new(2);
        c.gate(Gate::H, &[0])
            .unwrap()
            .noise(
                NoiseSpec::Flip {
                    axis: Axis::X,
                    p: 0.1,
                },
                1,
            )
            .unwrap()
            .measure(&[0, 1])
            .unwrap();
        let t = c.with_premeasure_layers(Gate::V, Gate::Vdg).unwrap();
        let kinds: Vec<String> = t
            .ops()
            .iter()
            .map(|op| match op {
                Op::Gate { gate, targets } => format!("{}{:?}", gate.name(), targets),
                Op::Noise { target, .. } => format!("N{target}"),
                Op::NoiseSite => "S".into(),
            })
            .collect();
        assert_eq!(
            kinds,
            ["H[0]", "V[0]", "V[1]", "N1", "S", "VDG[0]", "VDG[1]"]
        );
    }

    #[test]
    fn premeasure_layers_need_measurement() {
        let c = Circuit::new(1);
        assert_eq!(
            c.with_premeasure_layers(Gate::I, Gate::I),
            Err(Error::NoMeasurement)
        );
    }

    #[test]
    fn unitary_of_bell_preparation() {
        let mut c = Circuit::new(2);
        c.gate(Gate::H, &[0])
            .unwrap()
            .gate(Gate::Cx, &[0, 1])
            .unwrap();
        let u = c.unitary().unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((u.get(0, 0).re - h).abs() < 1e-15);
        assert!((u.get(3, 0).re - h).abs() < 1e-15);
        assert!(u.is_unitary(1e-12));
    }

    #[test]
    fn noise_spec_angle_weight() {
        let p = NoiseSpec::FlipAngle {
            axis: Axis::Y,
            theta: std::f64::consts::PI,
        }
        .pauli()
        .unwrap();
        assert!((p.weights()[2] - 1.0).abs() < 1e-15);
    }
}
