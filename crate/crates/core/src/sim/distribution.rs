use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on a probability table summing to one.
pub const SUM_TOL: f64 = 1e-10;

/// Bitstring of `index` with bit 0 leftmost (most significant).
pub fn bitstring(index: usize, n_bits: usize) -> String {
    (0..n_bits)
        .map(|k| {
            if (index >> (n_bits - 1 - k)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Inverse of [`bitstring`].
pub fn parse_bitstring(s: &str, n_bits: usize) -> Result<usize> {
    if s.len() != n_bits {
        return Err(Error::BitLengthMismatch {
            bits: s.to_string(),
            n_bits,
        });
    }
    s.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::InvalidBitstring(s.to_string())),
    })
}

/// Bit `k` (0 = leftmost) of `index` in an `n_bits` register.
pub fn bit(index: usize, k: usize, n_bits: usize) -> usize {
    (index >> (n_bits - 1 - k)) & 1
}

/// Probability table over `n_bits`-bit outcomes, stored densely by index.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    n_bits: usize,
    probs: Vec<f64>,
}

impl Distribution {
    /// Checks length, nonnegativity (to `−SUM_TOL`) and normalization.
    pub fn new(n_bits: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 1 << n_bits {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_bits,
                actual: probs.len(),
            });
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < -SUM_TOL) {
            return Err(Error::InvalidProbability(format!("entry {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidProbability(format!("table sums to {sum}")));
        }
        Ok(Distribution { n_bits, probs })
    }

    pub fn point(n_bits: usize, index: usize) -> Self {
        let mut probs = vec![0.0; 1 << n_bits];
        probs[index] = 1.0;
        Distribution { n_bits, probs }
    }

    pub fn uniform(n_bits: usize) -> Self {
        let d = 1usize << n_bits;
        Distribution {
            n_bits,
            probs: vec![1.0 / d as f64; d],
        }
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, index: usize) -> f64 {
        self.probs[index]
    }

    /// Probability of a bitstring; fails on length mismatch.
    pub fn prob_of(&self, bits: &str) -> Result<f64> {
        Ok(self.probs[parse_bitstring(bits, self.n_bits)?])
    }

    /// `(P[0|k], P[1|k])`.
    pub fn marginal(&self, k: usize) -> Result<(f64, f64)> {
        if k >= self.n_bits {
            return Err(Error::QubitOutOfRange {
                index: k,
                n_qubits: self.n_bits,
            });
        }
        let mut m = (0.0, 0.0);
        for (i, p) in self.probs.iter().enumerate() {
            if bit(i, k, self.n_bits) == 0 {
                m.0 += p;
            } else {
                m.1 += p;
            }
        }
        Ok(m)
    }

    /// Most probable outcome; ties go to the smallest index.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p > self.probs[best] {
                best = i;
            }
        }
        best
    }

    /// Total variation distance `½ Σ |p − q|`.
    pub fn tv_distance(&self, other: &Distribution) -> f64 {
        0.5 * self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }

    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Entries above `threshold`, keyed by bitstring.
    pub fn to_map(&self, threshold: f64) -> BTreeMap<String, f64> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > threshold)
            .map(|(i, p)| (bitstring(i, self.n_bits), *p))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DistributionJson {
            n_bits: self.n_bits,
            probabilities: self.to_map(0.0),
        })
        .expect("plain map serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: DistributionJson =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let mut probs = vec![0.0; 1 << raw.n_bits];
        for (bits, p) in raw.probabilities {
            probs[parse_bitstring(&bits, raw.n_bits)?] = p;
        }
        Distribution::new(raw.n_bits, probs)
    }

    /// Mixture `Σ wᵢ Dᵢ`; weights must sum to one.
    pub fn mixture(parts: &[(f64, &Distribution)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        let n_bits = first.1.n_bits;
        let mut probs = vec![0.0; 1 << n_bits];
        for (w, d) in parts {
            if d.n_bits != n_bits {
                return Err(Error::BitLengthMismatch {
                    bits: format!("<{} bits>", d.n_bits),
                    n_bits,
                });
            }
            for (acc, p) in probs.iter_mut().zip(&d.probs) {
                *acc += w * p;
            }
        }
        Distribution::new(n_bits, probs)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionJson {
    n_bits: usize,
    probabilities: BTreeMap<String, f64>,
}
