//! Circuit builders for the Deutsch, Bernstein–Vazirani and amplitude
//! estimation algorithms, with the QFT blocks they use.

mod bv;
mod deutsch;
mod qae;
mod qft;

pub use bv::{build_bv, bv_oracle, BvInstance};
pub use deutsch::{build_deutsch, DeutschCase};
pub use qae::{
    append_controlled_ry, build_qae, p_tilde, qae_estimate, qae_estimate_counts,
    qae_estimate_table, EstimatorResult, QaeInstance,
};
pub use qft::{
    append_qft, inverse_qft_circuit, qft_circuit, qft_gate_count, qft_matrix, MAX_QFT_QUBITS,
};
