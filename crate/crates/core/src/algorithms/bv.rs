use crate::error::{Error, Result};
use crate::qcore::Gate;
use crate::sim::{parse_bitstring, Circuit};

/// Hidden string `s` of a Bernstein–Vazirani problem; character `i` is `sᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BvInstance {
    s: String,
}

impl BvInstance {
    pub fn new(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidArgument("hidden string is empty".into()));
        }
        parse_bitstring(s, s.len())?;
        Ok(BvInstance { s: s.to_string() })
    }

    /// Checks that `s` has `n` bits.
    pub fn with_len(n: usize, s: &str) -> Result<Self> {
        if s.len() != n {
            return Err(Error::BitLengthMismatch {
                bits: s.to_string(),
                n_bits: n,
            });
        }
        BvInstance::new(s)
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &str {
        &self.s
    }

    /// Positions `i` with `sᵢ = 1`.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.s
            .bytes()
            .enumerate()
            .filter(|(_, b)| *b == b'1')
            .map(|(i, _)| i)
    }

    /// Classical oracle `f(x) = Σ xᵢ sᵢ mod 2`, with `x` a bitstring of length `n`.
    pub fn f(&self, x: &str) -> Result<u8> {
        parse_bitstring(x, self.n())?;
        let ones = x
            .bytes()
            .zip(self.s.bytes())
            .filter(|&(a, b)| a == b'1' && b == b'1')
            .count();
        Ok((ones % 2) as u8)
    }
}

/// `|x⟩|y⟩ ↦ |x⟩|y ⊕ f(x)⟩` on `n + 1` qubits: one CNOT from each system
/// qubit with `sᵢ = 1` onto the ancilla (qubit `n`).
pub fn bv_oracle(inst: &BvInstance) -> Circuit {
    let n = inst.n();
    let mut c = Circuit::new(n + 1);
    for i in inst.ones() {
        c.gate(Gate::Cx, &[i, n]).expect("in range");
    }
    c
}

/// System qubits `0..n`, ancilla `n` prepared in `|1⟩`; `H` on all,
/// oracle, `H` on the system, measure the system. The ideal outcome is `s`
/// with certainty.
pub fn build_bv(inst: &BvInstance) -> Circuit {
    let n = inst.n();
    let system: Vec<usize> = (0..n).collect();
    let all: Vec<usize> = (0..=n).collect();
    let mut c = Circuit::new(n + 1).named(
        format!("bv-{}", inst.s()),
        format!("Bernstein-Vazirani, hidden string {}", inst.s()),
    );
    c.gate(Gate::X, &[n])
        .and_then(|c| c.layer(Gate::H, &all))
        .expect("in range");
    c.extend(&bv_oracle(inst)).expect("same width");
    c.layer(Gate::H, &system)
        .and_then(|c| c.measure(&system))
        .expect("in range");
    c
}
