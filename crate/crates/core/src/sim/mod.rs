//! Circuits, exact density-matrix execution, and shot sampling.
//!
//! Measurement is terminal. Bit `k` of an outcome is the `k`-th measured
//! qubit and is the leftmost character of the printed bitstring.

mod circuit;
mod distribution;
mod histogram;
mod measurement;
mod run;
mod text;

pub use circuit::{Circuit, NoiseSpec, Op};
pub use distribution::{bit, bitstring, parse_bitstring, Distribution, SUM_TOL};
pub use histogram::{sample, Histogram};
pub use measurement::{noisy_povm, MeasurementMode, MeasurementModel};
pub use run::{final_state, run_exact, run_with_twirl, twirl_schedule, TwirlMode, TwirlOutput};
pub use text::{circuit_to_text, parse_circuit, parse_param};

pub(crate) use run::{sample_schedule, twirl_branches};
