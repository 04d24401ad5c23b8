use std::collections::BTreeMap;

use super::config::{MitigationConfig, NegativePolicy};
use crate::error::{Error, Result};
use crate::sim::{bitstring, parse_bitstring, Distribution, Histogram};

/// Tolerance on quasi-distribution weights summing to one.
pub const QUASI_SUM_TOL: f64 = 1e-9;

/// Largest register that [`QuasiDistribution`] keys can address.
pub const MAX_BITS: usize = 63;

/// Signed weights over `n_bits`-bit outcomes, summing to one. Only nonzero
/// entries are stored, so registers wider than a dense table are fine.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiDistribution {
    n_bits: usize,
    weights: BTreeMap<u64, f64>,
}

impl QuasiDistribution {
    pub fn new(n_bits: usize, weights: BTreeMap<u64, f64>) -> Result<Self> {
        if n_bits == 0 || n_bits > MAX_BITS {
            return Err(Error::InvalidArgument(format!(
                "register width {n_bits} outside 1..={MAX_BITS}"
            )));
        }
        if let Some(k) = weights.keys().find(|&&k| k >> n_bits != 0) {
            return Err(Error::BitLengthMismatch {
                bits: format!("index {k}"),
                n_bits,
            });
        }
        let q = QuasiDistribution { n_bits, weights };
        let sum = q.sum();
        if !sum.is_finite() || (sum - 1.0).abs() > QUASI_SUM_TOL {
            return Err(Error::Invariant(format!("quasi weights sum to {sum}")));
        }
        Ok(q)
    }

    pub fn from_distribution(d: &Distribution) -> Self {
        let weights = d
            .probs()
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != 0.0)
            .map(|(i, p)| (i as u64, *p))
            .collect();
        QuasiDistribution {
            n_bits: d.n_bits(),
            weights,
        }
    }

    pub fn from_histogram(h: &Histogram) -> Self {
        let shots = h.shots() as f64;
        let weights = h
            .counts()
            .iter()
            .map(|(bits, c)| {
                let idx = parse_bitstring(bits, h.n_bits()).expect("validated");
                (idx as u64, *c as f64 / shots)
            })
            .collect();
        QuasiDistribution {
            n_bits: h.n_bits(),
            weights,
        }
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn weights(&self) -> &BTreeMap<u64, f64> {
        &self.weights
    }

    pub fn weight(&self, index: u64) -> f64 {
        self.weights.get(&index).copied().unwrap_or(0.0)
    }

    pub fn weight_of(&self, bits: &str) -> Result<f64> {
        Ok(self.weight(parse_bitstring(bits, self.n_bits)? as u64))
    }

    pub fn sum(&self) -> f64 {
        self.weights.values().sum()
    }

    pub fn min_weight(&self) -> f64 {
        self.weights.values().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn has_negative(&self) -> bool {
        self.weights.values().any(|w| *w < 0.0)
    }

    /// `(P[0|k], P[1|k])`.
    pub fn marginal(&self, k: usize) -> Result<(f64, f64)> {
        if k >= self.n_bits {
            return Err(Error::QubitOutOfRange {
                index: k,
                n_qubits: self.n_bits,
            });
        }
        let shift = self.n_bits - 1 - k;
        Ok(self.weights.iter().fold((0.0, 0.0), |(a, b), (i, w)| {
            if (i >> shift) & 1 == 0 {
                (a + w, b)
            } else {
                (a, b + w)
            }
        }))
    }

    /// Largest weight; ties go to the smallest index.
    pub fn argmax(&self) -> u64 {
        let mut best: Option<(u64, f64)> = None;
        for (&i, &w) in &self.weights {
            if best.is_none_or(|(_, b)| w > b) {
                best = Some((i, w));
            }
        }
        best.map_or(0, |(i, _)| i)
    }

    /// Dense table of `2^n_bits` weights.
    pub fn dense(&self) -> Result<Vec<f64>> {
        if self.n_bits > 24 {
            return Err(Error::InvalidArgument(format!(
                "{} bits is too wide for a dense table",
                self.n_bits
            )));
        }
        let mut v = vec![0.0; 1 << self.n_bits];
        for (&i, &w) in &self.weights {
            v[i as usize] = w;
        }
        Ok(v)
    }

    /// Converts to a probability table; fails if a weight is below `−1e-10`.
    pub fn to_distribution(&self) -> Result<Distribution> {
        Distribution::new(self.n_bits, self.dense()?)
    }

    pub fn to_map(&self) -> BTreeMap<String, f64> {
        self.weights
            .iter()
            .map(|(&i, &w)| (bitstring(i as usize, self.n_bits), w))
            .collect()
    }

    /// Largest `|w − w'|` over the union of supports.
    pub fn max_abs_diff(&self, other: &QuasiDistribution) -> f64 {
        self.weights
            .keys()
            .chain(other.weights.keys())
            .map(|&i| (self.weight(i) - other.weight(i)).abs())
            .fold(0.0, f64::max)
    }
}

/// `(p_obs − η/2) / (1 − η)`: the exact inverse of `p ↦ (1 − η) p + η/2`.
/// The result may leave `[0, 1]`.
pub fn correct_marginal(p_obs: f64, eta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&eta) {
        return Err(Error::InvalidEta(eta));
    }
    Ok((p_obs - eta / 2.0) / (1.0 - eta))
}

/// Applies `⊗ₖ R(ηₖ)⁻¹` with `R(η) = [[1 − η/2, η/2], [η/2, 1 − η/2]]` by
/// one sweep per bit; bits with `η = 0` are skipped.
pub fn correct_quasi(
    input: &QuasiDistribution,
    cfg: &MitigationConfig,
) -> Result<QuasiDistribution> {
    let n = input.n_bits;
    let mut weights = input.weights.clone();
    for k in 0..n {
        let eta = cfg.eta(k);
        if !(0.0..1.0).contains(&eta) {
            return Err(Error::InvalidEta(eta));
        }
        if eta == 0.0 {
            continue;
        }
        let stay = (1.0 - eta / 2.0) / (1.0 - eta);
        let flip = -(eta / 2.0) / (1.0 - eta);
        let mask = 1u64 << (n - 1 - k);
        let mut next = BTreeMap::new();
        for (&i, &w) in &weights {
            *next.entry(i).or_insert(0.0) += stay * w;
            *next.entry(i ^ mask).or_insert(0.0) += flip * w;
        }
        weights = next;
    }
    weights.retain(|_, w| *w != 0.0);
    QuasiDistribution::new(n, weights)
}

/// Corrects an exact or empirical distribution; see [`correct_quasi`].
/// The configured negative policy is not applied here.
pub fn correct_joint(dist: &Distribution, cfg: &MitigationConfig) -> Result<QuasiDistribution> {
    correct_quasi(&QuasiDistribution::from_distribution(dist), cfg)
}

/// Corrects shot counts; see [`correct_quasi`].
pub fn correct_counts(hist: &Histogram, cfg: &MitigationConfig) -> Result<QuasiDistribution> {
    correct_quasi(&QuasiDistribution::from_histogram(hist), cfg)
}

/// Result of clipping a quasi-distribution onto the probability simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub dist: QuasiDistribution,
    /// Total variation distance between input and output.
    pub tv_distance: f64,
}

/// Clips negative weights to zero and renormalizes.
pub fn project_to_simplex(q: &QuasiDistribution) -> Result<Projection> {
    let total: f64 = q.weights.values().map(|w| w.max(0.0)).sum();
    if total <= 0.0 {
        return Err(Error::AllZero);
    }
    let weights: BTreeMap<u64, f64> = q
        .weights
        .iter()
        .filter(|(_, w)| **w > 0.0)
        .map(|(&i, &w)| (i, w / total))
        .collect();
    let out = QuasiDistribution {
        n_bits: q.n_bits,
        weights,
    };
    let tv = 0.5
        * q.weights
            .keys()
            .map(|&i| (q.weight(i) - out.weight(i)).abs())
            .sum::<f64>();
    Ok(Projection {
        dist: out,
        tv_distance: tv,
    })
}

/// Applies the configured negative policy; returns the weights and the
/// total-variation loss of clipping (zero under the quasi policy).
pub fn apply_policy(
    q: QuasiDistribution,
    policy: NegativePolicy,
) -> Result<(QuasiDistribution, f64)> {
    match policy {
        NegativePolicy::Quasi => Ok((q, 0.0)),
        NegativePolicy::ClipRenormalize => {
            let p = project_to_simplex(&q)?;
            Ok((p.dist, p.tv_distance))
        }
    }
}
