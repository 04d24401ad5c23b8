//! Quantum channels in Kraus form.
//!
//! Channels are compared through their column-stacked superoperators; the
//! Kraus form is what circuits consume.

mod fragment;
mod kraus;
mod pauli;
mod twirl;

pub use fragment::{noise_circuit_fragment, NoiseFragment};
pub use kraus::{
    adjoint_channel, apply_channel, Channel, ObservableMap, CHOI_CUTOFF, CHOI_NEGATIVE_FLOOR,
    TP_TOL,
};
pub use pauli::{depolarizing, eta_of_pauli, pauli_channel, Axis, PauliChannel, PAULI_SUM_TOL};
pub use twirl::{collective_twirl_sim, haar_unitary, twirl3, twirl_haar_mc, TwirlSet};
