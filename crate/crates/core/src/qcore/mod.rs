//! Dense complex linear algebra and the gate vocabulary.
//!
//! Conventions shared by the whole crate:
//!
//! * qubit 0 is the leftmost character of a printed bitstring and the most
//!   significant bit of a basis-state integer;
//! * operators acting on several qubits list their targets in the same
//!   order, first target most significant;
//! * global phases are never observable, so operator comparisons that care
//!   about physics use [`Operator::approx_eq_up_to_phase`].

mod gates;
mod operator;
mod state;

pub use gates::{controlled, gate_matrix, paulis, Gate};
pub use operator::{tensor, tensor_all, Operator, C64};
pub use state::{apply_gate, partial_trace, DensityMatrix, StateVector, EIGEN_FLOOR, STATE_TOL};

pub(crate) use operator::c;
#[cfg(test)]
pub(crate) use operator::{ONE, ZERO};
pub(crate) use state::check_targets;

/// Conjugation table of a single-qubit unitary on the Paulis.
///
/// Entry `k` (for `X, Y, Z`) is `(sign, image)` with `G† σ_k G = sign · σ_image`
/// and `image ∈ {1, 2, 3}`; `None` if some conjugate is not a signed Pauli.
pub fn pauli_conjugation_table(g: &Operator) -> Option<[(i8, usize); 3]> {
    let p = paulis();
    let mut table = [(1i8, 0usize); 3];
    for (k, slot) in table.iter_mut().enumerate() {
        let image = &(&g.adjoint() * &p[k + 1]) * g;
        *slot = (1..4).find_map(|j| {
            if image.distance(&p[j]) < 1e-12 {
                Some((1, j))
            } else if image.distance(&p[j].scale(c(-1.0, 0.0))) < 1e-12 {
                Some((-1, j))
            } else {
                None
            }
        })?;
    }
    Some(table)
}
