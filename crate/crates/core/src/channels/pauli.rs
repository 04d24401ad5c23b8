use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::kraus::Channel;
use crate::error::{Error, Result};
use crate::qcore::{paulis, Gate, Operator};

/// Tolerance on the Pauli weights summing to one.
pub const PAULI_SUM_TOL: f64 = 1e-12;

/// Pauli axis of a flip-type noise channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn gate(self) -> Gate {
        match self {
            Axis::X => Gate::X,
            Axis::Y => Gate::Y,
            Axis::Z => Gate::Z,
        }
    }

    /// Controlled version with the first target as control.
    pub fn controlled_gate(self) -> Gate {
        match self {
            Axis::X => Gate::Cx,
            Axis::Y => Gate::Cy,
            Axis::Z => Gate::Cz,
        }
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            _ => Err(Error::UnknownAxis(s.to_string())),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Weights `(p₀, pₓ, p_y, p_z)` of `p₀ ρ + pₓ XρX + p_y YρY + p_z ZρZ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliChannel {
    p0: f64,
    px: f64,
    py: f64,
    pz: f64,
}

impl PauliChannel {
    pub fn new(p0: f64, px: f64, py: f64, pz: f64) -> Result<Self> {
        let w = [p0, px, py, pz];
        if w.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidProbability(format!(
                "Pauli weights must be nonnegative, got {w:?}"
            )));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > PAULI_SUM_TOL {
            return Err(Error::InvalidProbability(format!(
                "Pauli weights sum to {sum}"
            )));
        }
        Ok(PauliChannel { p0, px, py, pz })
    }

    pub fn identity() -> Self {
        PauliChannel {
            p0: 1.0,
            px: 0.0,
            py: 0.0,
            pz: 0.0,
        }
    }

    /// `(1 − 3η/4, η/4, η/4, η/4)`.
    pub fn depolarizing(eta: f64) -> Result<Self> {
        check_eta(eta)?;
        let q = eta / 4.0;
        PauliChannel::new(1.0 - 3.0 * q, q, q, q)
    }

    /// `(1 − p) ρ + p σ ρ σ` for the Pauli `σ` of `axis`.
    pub fn flip(axis: Axis, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(format!(
                "flip probability {p} outside [0, 1]"
            )));
        }
        let mut w = [1.0 - p, 0.0, 0.0, 0.0];
        w[axis as usize + 1] = p;
        PauliChannel::new(w[0], w[1], w[2], w[3])
    }

    pub fn weights(&self) -> [f64; 4] {
        [self.p0, self.px, self.py, self.pz]
    }

    /// Combined weight of the three non-identity Paulis.
    pub fn error_weight(&self) -> f64 {
        self.px + self.py + self.pz
    }

    pub fn to_channel(&self) -> Channel {
        pauli_channel(self)
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidEta(eta));
    }
    Ok(())
}

/// `D_η[ρ] = (1 − η) ρ + η I/2`, for `0 ≤ η ≤ 1`.
pub fn depolarizing(eta: f64) -> Result<Channel> {
    Ok(pauli_channel(&PauliChannel::depolarizing(eta)?))
}

/// Kraus set `{√p₀ I, √pₓ X, √p_y Y, √p_z Z}`; zero-weight terms are omitted.
pub fn pauli_channel(p: &PauliChannel) -> Channel {
    let kraus: Vec<Operator> = paulis()
        .into_iter()
        .zip(p.weights())
        .filter(|(_, w)| *w > 0.0)
        .map(|(op, w)| op.scale(w.sqrt().into()))
        .collect();
    Channel::new(kraus).expect("validated Pauli weights are trace preserving")
}

/// Depolarizing strength produced by twirling a Pauli channel with the
/// three-element set: the twirl spreads `pₓ + p_y + p_z` evenly over the
/// three Paulis, and `D_η` puts `η/4` on each, so `η = (4/3)(pₓ + p_y + p_z)`.
pub fn eta_of_pauli(p: &PauliChannel) -> f64 {
    4.0 * p.error_weight() / 3.0
}
