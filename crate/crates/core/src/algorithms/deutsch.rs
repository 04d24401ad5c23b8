use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::Gate;
use crate::sim::Circuit;

/// The four functions `{0,1} → {0,1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeutschCase {
    Constant0,
    Constant1,
    BalancedId,
    BalancedNot,
}

impl DeutschCase {
    pub const ALL: [DeutschCase; 4] = [
        DeutschCase::Constant0,
        DeutschCase::Constant1,
        DeutschCase::BalancedId,
        DeutschCase::BalancedNot,
    ];

    pub fn eval(self, x: u8) -> u8 {
        match self {
            DeutschCase::Constant0 => 0,
            DeutschCase::Constant1 => 1,
            DeutschCase::BalancedId => x & 1,
            DeutschCase::BalancedNot => 1 - (x & 1),
        }
    }

    /// `f(0) ⊕ f(1)`: 0 for constant, 1 for balanced.
    pub fn answer(self) -> u8 {
        self.eval(0) ^ self.eval(1)
    }
}

impl FromStr for DeutschCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "constant0" => Ok(DeutschCase::Constant0),
            "constant1" => Ok(DeutschCase::Constant1),
            "balanced_id" => Ok(DeutschCase::BalancedId),
            "balanced_not" => Ok(DeutschCase::BalancedNot),
            _ => Err(Error::InvalidArgument(format!(
                "unknown Deutsch case '{s}'"
            ))),
        }
    }
}

impl fmt::Display for DeutschCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeutschCase::Constant0 => "constant0",
            DeutschCase::Constant1 => "constant1",
            DeutschCase::BalancedId => "balanced_id",
            DeutschCase::BalancedNot => "balanced_not",
        })
    }
}

/// Qubit 0 is the query qubit, qubit 1 the ancilla prepared in `|1⟩`.
/// Only qubit 0 is measured; the ideal outcome is `f(0) ⊕ f(1)`.
pub fn build_deutsch(case: DeutschCase) -> Circuit {
    let mut c = Circuit::new(2).named(
        format!("deutsch-{case}"),
        "Deutsch problem: constant or balanced",
    );
    let build = |c: &mut Circuit| -> Result<()> {
        c.gate(Gate::X, &[1])?.layer(Gate::H, &[0, 1])?;
        match case {
            DeutschCase::Constant0 => {}
            DeutschCase::Constant1 => {
                c.gate(Gate::X, &[1])?;
            }
            DeutschCase::BalancedId => {
                c.gate(Gate::Cx, &[0, 1])?;
            }
            DeutschCase::BalancedNot => {
                c.gate(Gate::Cx, &[0, 1])?.gate(Gate::X, &[1])?;
            }
        }
        c.gate(Gate::H, &[0])?.measure(&[0])?;
        Ok(())
    };
    build(&mut c).expect("fixed two-qubit layout");
    c
}
