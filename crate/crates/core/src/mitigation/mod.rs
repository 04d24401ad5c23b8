//! Readout-error mitigation: the pre-measurement twirl pass, the inverse
//! depolarization correction, `η` calibration, and the four-condition
//! pipeline.

mod calibrate;
mod config;
mod io;
mod pipeline;
mod quasi;
mod twirl_pass;

pub use calibrate::{calibrate_eta, calibration_circuits, simulator_runner, Calibration};
pub use config::{MitigationConfig, NegativePolicy};
pub use io::{corrected_to_json, counts_to_json, parse_counts_json, CountsFile};
pub use pipeline::{mitigate_pipeline, Condition, ExactReport, PipelineReport, SampledReport};
pub use quasi::{
    apply_policy, correct_counts, correct_joint, correct_marginal, correct_quasi,
    project_to_simplex, Projection, QuasiDistribution, MAX_BITS, QUASI_SUM_TOL,
};
pub use twirl_pass::{
    average_branches, premeasure_twirl_pass, premeasure_twirl_schedule, sample_branches,
    TwirlSchedule,
};
