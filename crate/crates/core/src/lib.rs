//! Density-matrix simulation of small circuits with readout noise, and
//! mitigation of that noise in two steps: a collective three-unitary twirl
//! just before measurement turns any single-qubit noise into depolarizing
//! noise, and a classical per-bit inverse then undoes the depolarization.
//!
//! Modules, bottom up:
//!
//! * [`qcore`]: dense operators, states, gates, partial trace;
//! * [`channels`]: Kraus channels, Pauli channels, twirls, the ancilla
//!   construction of flip noise;
//! * [`sim`]: circuits, exact execution, measurement noise models, sampling;
//! * [`algorithms`]: Deutsch, Bernstein–Vazirani, QFT and amplitude
//!   estimation;
//! * [`mitigation`]: the twirl pass, the correction, calibration and the
//!   four-condition pipeline;
//! * [`scenarios`]: pinned noisy-readout comparisons.
//!
//! ```
//! use std::collections::BTreeMap;
//! use twirlmit::algorithms::{build_bv, BvInstance};
//! use twirlmit::channels::{pauli_channel, Axis, PauliChannel};
//! use twirlmit::mitigation::{mitigate_pipeline, MitigationConfig};
//! use twirlmit::sim::MeasurementModel;
//!
//! let circ = build_bv(&BvInstance::new("101")?);
//! let flip = pauli_channel(&PauliChannel::flip(Axis::X, 0.3)?);
//! let noise = MeasurementModel::state_noise(BTreeMap::from([(1, flip)]))?;
//! let cfg = MitigationConfig::uniform(0.0)?.with_eta(1, 0.4)?;
//!
//! let report = mitigate_pipeline(&circ, &noise, &cfg, None)?;
//! let [ideal, noisy, twirled, corrected] = report.exact.probabilities_of("101")?;
//! assert!((ideal - 1.0).abs() < 1e-12);
//! assert!((noisy - 0.7).abs() < 1e-12);
//! assert!((twirled - 0.8).abs() < 1e-12);
//! assert!((corrected - 1.0).abs() < 1e-12);
//! # Ok::<(), twirlmit::Error>(())
//! ```

pub mod algorithms;
pub mod channels;
pub mod error;
pub mod mitigation;
pub mod qcore;
pub mod scenarios;
pub mod sim;

pub use channels::{Channel, PauliChannel, TwirlSet};
pub use error::{Error, Result};
pub use mitigation::{MitigationConfig, QuasiDistribution};
pub use qcore::{DensityMatrix, Gate, Operator};
pub use sim::{Circuit, Distribution, Histogram, MeasurementModel};

// Book chapters and the README compile and run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/conventions.md")]
    mod conventions {}
    #[doc = include_str!("../../../book/src/circuits.md")]
    mod circuits {}
    #[doc = include_str!("../../../book/src/channels.md")]
    mod channels {}
    #[doc = include_str!("../../../book/src/measurement.md")]
    mod measurement {}
    #[doc = include_str!("../../../book/src/algorithms.md")]
    mod algorithms {}
    #[doc = include_str!("../../../book/src/mitigation.md")]
    mod mitigation {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
