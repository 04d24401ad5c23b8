use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::qcore::{Gate, Operator, C64};
use crate::sim::{Circuit, Op};

/// Largest register handled by the QFT builders.
pub const MAX_QFT_QUBITS: usize = 12;

fn check_m(m: usize) -> Result<()> {
    if !(1..=MAX_QFT_QUBITS).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "QFT size {m} outside 1..={MAX_QFT_QUBITS}"
        )));
    }
    Ok(())
}

/// `F[y, x] = e^{2πi xy / 2^m} / √2^m`.
pub fn qft_matrix(m: usize) -> Result<Operator> {
    check_m(m)?;
    let d = 1usize << m;
    let norm = 1.0 / (d as f64).sqrt();
    Operator::from_matrix(DMatrix::from_fn(d, d, |y, x| {
        let k = (x * y) % d;
        C64::from_polar(norm, 2.0 * PI * k as f64 / d as f64)
    }))
}

/// Gate sequence for the QFT on `qubits` (first listed is most significant):
/// `H` and controlled phases `CP(π/2^{r−q})` per qubit, then a reversal.
fn qft_gates(qubits: &[usize]) -> Vec<(Gate, Vec<usize>)> {
    let m = qubits.len();
    let mut gates = Vec::new();
    for q in 0..m {
        gates.push((Gate::H, vec![qubits[q]]));
        for r in q + 1..m {
            let angle = PI / (1u64 << (r - q)) as f64;
            gates.push((Gate::CPhase(angle), vec![qubits[r], qubits[q]]));
        }
    }
    for q in 0..m / 2 {
        gates.push((Gate::Swap, vec![qubits[q], qubits[m - 1 - q]]));
    }
    gates
}

/// Appends the QFT (or its inverse) on the listed qubits of `circ`.
pub fn append_qft(circ: &mut Circuit, qubits: &[usize], inverse: bool) -> Result<()> {
    check_m(qubits.len())?;
    let mut gates = qft_gates(qubits);
    if inverse {
        gates.reverse();
        for g in &mut gates {
            g.0 = g.0.dagger();
        }
    }
    for (g, t) in gates {
        circ.gate(g, &t)?;
    }
    Ok(())
}

/// Decomposed QFT on an `m`-qubit register.
pub fn qft_circuit(m: usize) -> Result<Circuit> {
    let mut c = Circuit::new(m);
    append_qft(&mut c, &(0..m).collect::<Vec<_>>(), false)?;
    Ok(c)
}

/// Inverse of [`qft_circuit`]: reversed order, each gate conjugated.
pub fn inverse_qft_circuit(m: usize) -> Result<Circuit> {
    let mut c = Circuit::new(m);
    append_qft(&mut c, &(0..m).collect::<Vec<_>>(), true)?;
    Ok(c)
}

/// Number of gates in the decomposition.
pub fn qft_gate_count(m: usize) -> Result<usize> {
    Ok(qft_circuit(m)?
        .ops()
        .iter()
        .filter(|op| matches!(op, Op::Gate { .. }))
        .count())
}
