//! The fixed gate vocabulary.
//!
//! Single-qubit gates follow the U2/U3 parameterization used by common
//! circuit toolkits: `H = U2(0, π)` and `Ry(θ) = U3(θ, 0, 0)`. `V` and `W`
//! are the two non-identity elements of the standard three-element twirl set.
//! For two-qubit gates the first target is the control.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;

use super::operator::{c, Operator, C64, ONE, ZERO};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    I,
    X,
    Y,
    Z,
    H,
    Ry(f64),
    U2(f64, f64),
    U3(f64, f64, f64),
    /// Phase gate `diag(1, e^{iλ})`.
    Phase(f64),
    V,
    Vdg,
    W,
    Wdg,
    Cx,
    Cy,
    Cz,
    CPhase(f64),
    CRy(f64),
    Swap,
}

impl Gate {
    /// `(arity, parameter count)` of a named gate.
    pub fn signature(name: &str) -> Result<(usize, usize)> {
        Ok(match name.to_ascii_uppercase().as_str() {
            "I" | "ID" | "X" | "Y" | "Z" | "H" | "V" | "VDG" | "W" | "WDG" => (1, 0),
            "CX" | "CNOT" | "CY" | "CZ" | "SWAP" => (2, 0),
            "RY" | "P" | "PHASE" => (1, 1),
            "CP" | "CPHASE" | "CRY" => (2, 1),
            "U2" => (1, 2),
            "U3" => (1, 3),
            _ => return Err(Error::UnknownGate(name.to_string())),
        })
    }

    /// Looks a gate up by name (case-insensitive) and binds its parameters.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Gate> {
        let upper = name.to_ascii_uppercase();
        let (_, expected) = Gate::signature(name)?;
        if params.len() != expected {
            return Err(Error::ParamCount {
                gate: name.to_string(),
                expected,
                actual: params.len(),
            });
        }
        let p = |i: usize| params[i];
        Ok(match upper.as_str() {
            "I" | "ID" => Gate::I,
            "X" => Gate::X,
            "Y" => Gate::Y,
            "Z" => Gate::Z,
            "H" => Gate::H,
            "V" => Gate::V,
            "VDG" => Gate::Vdg,
            "W" => Gate::W,
            "WDG" => Gate::Wdg,
            "CX" | "CNOT" => Gate::Cx,
            "CY" => Gate::Cy,
            "CZ" => Gate::Cz,
            "SWAP" => Gate::Swap,
            "RY" => Gate::Ry(p(0)),
            "P" | "PHASE" => Gate::Phase(p(0)),
            "CP" | "CPHASE" => Gate::CPhase(p(0)),
            "CRY" => Gate::CRy(p(0)),
            "U2" => Gate::U2(p(0), p(1)),
            "U3" => Gate::U3(p(0), p(1), p(2)),
            _ => unreachable!(),
        })
    }

    /// Canonical name used by the circuit text format.
    pub fn name(&self) -> &'static str {
        match self {
            Gate::I => "I",
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::H => "H",
            Gate::Ry(_) => "RY",
            Gate::U2(..) => "U2",
            Gate::U3(..) => "U3",
            Gate::Phase(_) => "P",
            Gate::V => "V",
            Gate::Vdg => "VDG",
            Gate::W => "W",
            Gate::Wdg => "WDG",
            Gate::Cx => "CX",
            Gate::Cy => "CY",
            Gate::Cz => "CZ",
            Gate::CPhase(_) => "CP",
            Gate::CRy(_) => "CRY",
            Gate::Swap => "SWAP",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Gate::Ry(t) | Gate::Phase(t) | Gate::CPhase(t) | Gate::CRy(t) => vec![t],
            Gate::U2(a, b) => vec![a, b],
            Gate::U3(a, b, d) => vec![a, b, d],
            _ => Vec::new(),
        }
    }

    /// Number of qubits the gate acts on.
    pub fn arity(&self) -> usize {
        match self {
            Gate::Cx | Gate::Cy | Gate::Cz | Gate::CPhase(_) | Gate::CRy(_) | Gate::Swap => 2,
            _ => 1,
        }
    }

    /// The inverse gate, exactly (no phase slack).
    pub fn dagger(&self) -> Gate {
        match *self {
            Gate::Ry(t) => Gate::Ry(-t),
            Gate::Phase(l) => Gate::Phase(-l),
            Gate::CPhase(l) => Gate::CPhase(-l),
            Gate::CRy(t) => Gate::CRy(-t),
            Gate::U3(t, p, l) => Gate::U3(-t, -l, -p),
            Gate::U2(p, l) => Gate::U3(-FRAC_PI_2, -l, -p),
            Gate::V => Gate::Vdg,
            Gate::Vdg => Gate::V,
            Gate::W => Gate::Wdg,
            Gate::Wdg => Gate::W,
            g => g,
        }
    }

    pub fn matrix(&self) -> Operator {
        let h = FRAC_1_SQRT_2;
        let i = c(0.0, 1.0);
        let m2 = |e: [C64; 4]| Operator::from_rows(2, &e).expect("2x2");
        match *self {
            Gate::I => Operator::identity(2),
            Gate::X => m2([ZERO, ONE, ONE, ZERO]),
            Gate::Y => m2([ZERO, -i, i, ZERO]),
            Gate::Z => m2([ONE, ZERO, ZERO, -ONE]),
            Gate::H => m2([c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]),
            Gate::Ry(t) => {
                let (s, co) = (t / 2.0).sin_cos();
                m2([c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)])
            }
            Gate::U2(phi, lambda) => m2([
                c(h, 0.0),
                -C64::from_polar(h, lambda),
                C64::from_polar(h, phi),
                C64::from_polar(h, lambda + phi),
            ]),
            Gate::U3(theta, phi, lambda) => {
                let (s, co) = (theta / 2.0).sin_cos();
                m2([
                    c(co, 0.0),
                    -C64::from_polar(s, lambda),
                    C64::from_polar(s, phi),
                    C64::from_polar(co, lambda + phi),
                ])
            }
            Gate::Phase(l) => m2([ONE, ZERO, ZERO, C64::from_polar(1.0, l)]),
            Gate::V => m2([c(0.5, -0.5), c(-0.5, -0.5), c(0.5, -0.5), c(0.5, 0.5)]),
            Gate::W => m2([c(-0.5, -0.5), c(-0.5, -0.5), c(0.5, -0.5), c(-0.5, 0.5)]),
            Gate::Vdg => Gate::V.matrix().adjoint(),
            Gate::Wdg => Gate::W.matrix().adjoint(),
            Gate::Cx => controlled(&Gate::X.matrix()),
            Gate::Cy => controlled(&Gate::Y.matrix()),
            Gate::Cz => controlled(&Gate::Z.matrix()),
            Gate::CPhase(l) => controlled(&Gate::Phase(l).matrix()),
            Gate::CRy(t) => controlled(&Gate::Ry(t).matrix()),
            Gate::Swap => {
                let mut e = [ZERO; 16];
                for (r, col) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
                    e[r * 4 + col] = ONE;
                }
                Operator::from_rows(4, &e).expect("4x4")
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        let params = self.params();
        if !params.is_empty() {
            let list: Vec<String> = params.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", list.join(", "))?;
        }
        Ok(())
    }
}

/// `C(U) = |0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U` with the control as the leading qubit.
pub fn controlled(u: &Operator) -> Operator {
    let d = u.dim();
    let mut m = Operator::identity(2 * d).into_matrix();
    for r in 0..d {
        for col in 0..d {
            m[(d + r, d + col)] = u.get(r, col);
        }
    }
    Operator::from_matrix(m).expect("square")
}

/// Matrix of a named gate with bound parameters.
pub fn gate_matrix(name: &str, params: &[f64]) -> Result<Operator> {
    Gate::from_name(name, params).map(|g| g.matrix())
}

/// The four Pauli matrices in the order `I, X, Y, Z`.
pub fn paulis() -> [Operator; 4] {
    [
        Gate::I.matrix(),
        Gate::X.matrix(),
        Gate::Y.matrix(),
        Gate::Z.matrix(),
    ]
}
