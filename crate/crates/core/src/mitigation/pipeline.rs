use std::fmt;

use super::config::MitigationConfig;
use super::quasi::{apply_policy, correct_counts, correct_joint, QuasiDistribution};
use super::twirl_pass::{average_branches, premeasure_twirl_pass, sample_branches};
use crate::error::{Error, Result};
use crate::sim::{
    run_exact, sample, Circuit, Distribution, Histogram, MeasurementMode, MeasurementModel,
};

/// The four compared conditions, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Ideal,
    Noisy,
    Twirled,
    Corrected,
}

impl Condition {
    pub const ALL: [Condition; 4] = [
        Condition::Ideal,
        Condition::Noisy,
        Condition::Twirled,
        Condition::Corrected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Ideal => "ideal",
            Condition::Noisy => "noisy",
            Condition::Twirled => "twirled",
            Condition::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact distributions of the four conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactReport {
    pub ideal: Distribution,
    pub noisy: Distribution,
    pub twirled: Distribution,
    pub corrected: QuasiDistribution,
    /// Total-variation loss of the negative policy on `corrected`.
    pub clip_loss: f64,
}

/// Sampled counts of the first three conditions and the correction of the
/// twirled counts.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledReport {
    pub shots: u64,
    pub seed: u64,
    pub ideal: Histogram,
    pub noisy: Histogram,
    pub twirled: Histogram,
    pub corrected: QuasiDistribution,
    pub clip_loss: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineReport {
    pub exact: ExactReport,
    pub sampled: Option<SampledReport>,
}

impl ExactReport {
    /// The four conditions as weights, in [`Condition::ALL`] order.
    pub fn conditions(&self) -> [QuasiDistribution; 4] {
        [
            QuasiDistribution::from_distribution(&self.ideal),
            QuasiDistribution::from_distribution(&self.noisy),
            QuasiDistribution::from_distribution(&self.twirled),
            self.corrected.clone(),
        ]
    }

    /// Weight of `bits` in each condition.
    pub fn probabilities_of(&self, bits: &str) -> Result<[f64; 4]> {
        let c = self.conditions();
        Ok([
            c[0].weight_of(bits)?,
            c[1].weight_of(bits)?,
            c[2].weight_of(bits)?,
            c[3].weight_of(bits)?,
        ])
    }
}

impl SampledReport {
    /// The four conditions as weights (frequencies for the sampled ones).
    pub fn conditions(&self) -> [QuasiDistribution; 4] {
        [
            QuasiDistribution::from_histogram(&self.ideal),
            QuasiDistribution::from_histogram(&self.noisy),
            QuasiDistribution::from_histogram(&self.twirled),
            self.corrected.clone(),
        ]
    }

    pub fn probabilities_of(&self, bits: &str) -> Result<[f64; 4]> {
        let c = self.conditions();
        Ok([
            c[0].weight_of(bits)?,
            c[1].weight_of(bits)?,
            c[2].weight_of(bits)?,
            c[3].weight_of(bits)?,
        ])
    }
}

/// Runs ideal, noisy, twirled, and twirled-then-corrected versions of
/// `circ` with readout noise `noise` acting at the noise site.
///
/// The exact report is always produced. With `sampling = Some((shots,
/// seed))` a sampled report is added: the ideal run uses `seed`, the noisy
/// run `seed + 1`, the per-shot twirl `seed + 2`, and the correction is
/// applied to the twirled counts.
pub fn mitigate_pipeline(
    circ: &Circuit,
    noise: &MeasurementModel,
    cfg: &MitigationConfig,
    sampling: Option<(u64, u64)>,
) -> Result<PipelineReport> {
    if matches!(
        noise.mode(),
        MeasurementMode::DetectorNoise | MeasurementMode::Combined
    ) {
        return Err(Error::TwirlInDetectorMode);
    }
    let ideal_model = MeasurementModel::ideal();
    let ideal = run_exact(circ, &ideal_model)?;
    let noisy = run_exact(circ, noise)?;
    let branches = premeasure_twirl_pass(circ, cfg.twirl_set())?;
    let twirled = average_branches(&branches, noise)?;
    let (corrected, clip_loss) =
        apply_policy(correct_joint(&twirled, cfg)?, cfg.negative_policy())?;
    let exact = ExactReport {
        ideal: ideal.clone(),
        noisy: noisy.clone(),
        twirled,
        corrected,
        clip_loss,
    };
    let sampled = match sampling {
        None => None,
        Some((shots, seed)) => {
            let twirled_h = sample_branches(&branches, noise, shots, seed.wrapping_add(2))?;
            let (corrected, clip_loss) =
                apply_policy(correct_counts(&twirled_h, cfg)?, cfg.negative_policy())?;
            Some(SampledReport {
                shots,
                seed,
                ideal: sample(&ideal, shots, seed)?,
                noisy: sample(&noisy, shots, seed.wrapping_add(1))?,
                twirled: twirled_h,
                corrected,
                clip_loss,
            })
        }
    };
    Ok(PipelineReport { exact, sampled })
}
