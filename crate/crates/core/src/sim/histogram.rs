use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::distribution::{bitstring, parse_bitstring, Distribution};
use crate::error::{Error, Result};

/// Shot counts keyed by bitstring. Only observed outcomes are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    n_bits: usize,
    counts: BTreeMap<String, u64>,
    shots: u64,
}

impl Histogram {
    /// Validates bitstring lengths and that counts sum to `shots`.
    pub fn new(n_bits: usize, counts: BTreeMap<String, u64>, shots: u64) -> Result<Self> {
        for bits in counts.keys() {
            parse_bitstring(bits, n_bits)?;
        }
        let sum: u64 = counts.values().sum();
        if sum != shots {
            return Err(Error::ShotMismatch { sum, shots });
        }
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let counts = counts.into_iter().filter(|(_, c)| *c > 0).collect();
        Ok(Histogram {
            n_bits,
            counts,
            shots,
        })
    }

    /// Builds from per-index counts.
    pub fn from_index_counts(n_bits: usize, counts: &[u64]) -> Result<Self> {
        let map = counts
            .iter()
            .enumerate()
            .filter(|(_, c)| **c > 0)
            .map(|(i, c)| (bitstring(i, n_bits), *c))
            .collect();
        Histogram::new(n_bits, map, counts.iter().sum())
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn count(&self, bits: &str) -> u64 {
        self.counts.get(bits).copied().unwrap_or(0)
    }

    pub fn frequency(&self, bits: &str) -> f64 {
        self.count(bits) as f64 / self.shots as f64
    }

    /// Empirical distribution `count / shots`.
    pub fn to_distribution(&self) -> Distribution {
        let mut probs = vec![0.0; 1 << self.n_bits];
        for (bits, c) in &self.counts {
            probs[parse_bitstring(bits, self.n_bits).expect("validated")] =
                *c as f64 / self.shots as f64;
        }
        Distribution::new(self.n_bits, probs).expect("frequencies sum to one")
    }

    /// `{"counts": {bitstring: count}, "shots": N}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&HistogramJson {
            counts: self.counts.clone(),
            shots: self.shots,
        })
        .expect("plain map serializes")
    }

    /// Parses the format of [`Histogram::to_json`]; the register width is
    /// the common bitstring length.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: HistogramJson =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Histogram::from_counts(raw.counts, raw.shots)
    }

    /// Infers `n_bits` from the keys.
    pub fn from_counts(counts: BTreeMap<String, u64>, shots: u64) -> Result<Self> {
        let n_bits = counts.keys().next().map_or(0, |k| k.len());
        if n_bits == 0 {
            return Err(Error::InvalidArgument(
                "counts table has no bitstrings".into(),
            ));
        }
        Histogram::new(n_bits, counts, shots)
    }
}

#[derive(Serialize, Deserialize)]
struct HistogramJson {
    counts: BTreeMap<String, u64>,
    shots: u64,
}

/// Inverse-CDF sampler over a fixed table.
pub(crate) struct Sampler {
    cdf: Vec<f64>,
}

impl Sampler {
    pub(crate) fn new(dist: &Distribution) -> Self {
        let mut acc = 0.0;
        let cdf = dist
            .probs()
            .iter()
            .map(|p| {
                acc += p.max(0.0);
                acc
            })
            .collect();
        Sampler { cdf }
    }

    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cdf.last().expect("nonempty table");
        let u: f64 = rng.random::<f64>() * total;
        let i = self.cdf.partition_point(|&c| c <= u);
        // `u < total` so `i` is in range except for rounding at the top
        i.min(self.cdf.len() - 1)
    }
}

/// Multinomial draw of `shots` outcomes from `dist`, one uniform variate per
/// shot from a ChaCha20 stream seeded with `seed`.
pub fn sample(dist: &Distribution, shots: u64, seed: u64) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let sampler = Sampler::new(dist);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; dist.probs().len()];
    for _ in 0..shots {
        counts[sampler.draw(&mut rng)] += 1;
    }
    Histogram::from_index_counts(dist.n_bits(), &counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_sampling() {
        let h = sample(&Distribution::point(3, 5), 100, 1).unwrap();
        assert_eq!(h.count("101"), 100);
        assert_eq!(h.counts().len(), 1);
    }

    #[test]
    fn seed_repeatability() {
        let d = Distribution::new(1, vec![0.7, 0.3]).unwrap();
        assert_eq!(sample(&d, 8192, 7).unwrap(), sample(&d, 8192, 7).unwrap());
        assert_ne!(sample(&d, 8192, 7).unwrap(), sample(&d, 8192, 8).unwrap());
    }

    #[test]
    fn seventy_thirty_band() {
        let d = Distribution::new(1, vec![0.7, 0.3]).unwrap();
        let f = sample(&d, 8192, 7).unwrap().frequency("0");
        assert!((0.685..=0.715).contains(&f), "{f}");
    }

    #[test]
    fn json_round_trip_and_validation() {
        let h = sample(&Distribution::uniform(2), 64, 3).unwrap();
        assert_eq!(Histogram::from_json(&h.to_json()).unwrap(), h);
        let bad = r#"{"counts": {"01": 3, "1": 1}, "shots": 4}"#;
        assert!(Histogram::from_json(bad).is_err());
        let short = r#"{"counts": {"01": 3}, "shots": 4}"#;
        assert_eq!(
            Histogram::from_json(short),
            Err(Error::ShotMismatch { sum: 3, shots: 4 })
        );
    }

    #[test]
    fn zero_shots_rejected() {
        assert_eq!(
            sample(&Distribution::uniform(1), 0, 0),
            Err(Error::ZeroShots)
        );
    }
}
