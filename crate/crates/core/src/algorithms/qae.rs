use std::f64::consts::PI;

use super::qft::append_qft;
use crate::error::{Error, Result};
use crate::qcore::Gate;
use crate::sim::{Circuit, Distribution, Histogram};

/// Amplitude estimation for `A = Ry(θ₀)` with `sin²(θ₀/2) = p`, using `m`
/// evaluation qubits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QaeInstance {
    m: usize,
    p: f64,
}

impl QaeInstance {
    pub fn new(m: usize, p: f64) -> Result<Self> {
        if !(1..=11).contains(&m) {
            return Err(Error::InvalidArgument(format!(
                "evaluation register size {m} outside 1..=11"
            )));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(format!("amplitude {p}")));
        }
        Ok(QaeInstance { m, p })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `θ₀ = 2 asin √p`.
    pub fn theta0(&self) -> f64 {
        2.0 * self.p.sqrt().asin()
    }

    /// Circuit qubit of evaluation qubit `j` (1-based). Evaluation qubit `j`
    /// controls `Q^{2^{j−1}}` and carries bit `2^{j−1}` of `z`.
    pub fn eval_qubit(&self, j: usize) -> usize {
        assert!(
            (1..=self.m).contains(&j),
            "evaluation qubit {j} out of 1..={}",
            self.m
        );
        self.m - j
    }

    /// Circuit qubit holding the state `A|0⟩`.
    pub fn state_qubit(&self) -> usize {
        self.m
    }
}

/// `C(Ry(φ))` as `Ry(φ/2)`, CNOT, `Ry(−φ/2)`, CNOT on the target.
pub fn append_controlled_ry(
    circ: &mut Circuit,
    control: usize,
    target: usize,
    phi: f64,
) -> Result<()> {
    circ.gate(Gate::Ry(phi / 2.0), &[target])?
        .gate(Gate::Cx, &[control, target])?
        .gate(Gate::Ry(-phi / 2.0), &[target])?
        .gate(Gate::Cx, &[control, target])?;
    Ok(())
}

/// Evaluation qubits `0..m` (qubit 0 most significant in `z`), state qubit
/// `m`. `H^{⊗m}` on the evaluation register stands in for the QFT on
/// `|0…0⟩`; evaluation qubit `j` controls `Q^{2^{j−1}} = Ry(2^j θ₀)`;
/// the inverse QFT follows and the evaluation register is measured.
pub fn build_qae(inst: &QaeInstance) -> Circuit {
    let m = inst.m();
    let eval: Vec<usize> = (0..m).collect();
    let mut c = Circuit::new(m + 1).named(
        format!("qae-m{m}"),
        format!("amplitude estimation, p = {}", inst.p()),
    );
    let build = |c: &mut Circuit| -> Result<()> {
        c.layer(Gate::H, &eval)?
            .gate(Gate::Ry(inst.theta0()), &[inst.state_qubit()])?;
        for j in 1..=m {
            let power = (1u64 << (j - 1)) as f64;
            append_controlled_ry(
                c,
                inst.eval_qubit(j),
                inst.state_qubit(),
                power * 2.0 * inst.theta0(),
            )?;
        }
        append_qft(c, &eval, true)?;
        c.measure(&eval)?;
        Ok(())
    };
    build(&mut c).expect("layout is in range");
    c
}

/// `p̃ = sin²(zπ/2^m)`.
pub fn p_tilde(z: usize, m: usize) -> f64 {
    (z as f64 * PI / (1u64 << m) as f64).sin().powi(2)
}

/// Estimator output for one evaluation-register table.
///
/// Outcomes `z` and `2^m − z` give the same `p̃`, so the table is also
/// folded onto `0..=2^{m−1}`. The window is the top folded bin together
/// with its heavier neighbour: the two grid points that straddle `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimatorResult {
    pub m: usize,
    /// Mass per `z` in `0..2^m`.
    pub table: Vec<f64>,
    /// Shots behind `table`, if it came from counts.
    pub shots: Option<u64>,
    /// Most probable raw `z` and its mass.
    pub peak_z: usize,
    pub peak_probability: f64,
    /// Mass per folded `z` in `0..=2^{m−1}`.
    pub folded: Vec<f64>,
    pub folded_peak_z: usize,
    /// `p̃` at the folded peak: the point estimate.
    pub estimate: f64,
    /// Adjacent folded bins `(lo, lo + 1)` around the peak.
    pub window: (usize, usize),
    pub window_mass: f64,
    /// Mean of `p̃` over the two window bins.
    pub window_p_tilde: f64,
}

impl EstimatorResult {
    pub fn p_tilde(&self, z: usize) -> f64 {
        p_tilde(z, self.m)
    }
}

fn argmax(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .fold(0, |best, (i, &x)| if x > v[best] { i } else { best })
}

/// Estimator on a probability (or frequency) table over `m` bits.
pub fn qae_estimate(dist: &Distribution, m: usize) -> Result<EstimatorResult> {
    if dist.n_bits() != m {
        return Err(Error::BitLengthMismatch {
            bits: format!("<{} bits>", dist.n_bits()),
            n_bits: m,
        });
    }
    qae_estimate_table(dist.probs().to_vec(), m)
}

/// Estimator on a raw weight table indexed by `z`. Weights may be negative
/// (corrected quasi-probabilities); only the ranking and sums are used.
pub fn qae_estimate_table(table: Vec<f64>, m: usize) -> Result<EstimatorResult> {
    if m == 0 {
        return Err(Error::InvalidArgument("empty evaluation register".into()));
    }
    if table.len() != 1 << m {
        return Err(Error::DimensionMismatch {
            expected: 1 << m,
            actual: table.len(),
        });
    }
    let d = table.len();
    let half = d / 2;
    let mut folded = vec![0.0; half + 1];
    for (z, p) in table.iter().enumerate() {
        folded[z.min(d - z)] += p;
    }
    let peak_z = argmax(&table);
    let fz = argmax(&folded);
    let lo = match (fz.checked_sub(1), fz < half) {
        (Some(l), true) if folded[l] >= folded[fz + 1] => l,
        (Some(l), false) => l,
        _ => fz,
    };
    let window = (lo, lo + 1);
    Ok(EstimatorResult {
        m,
        peak_z,
        peak_probability: table[peak_z],
        estimate: p_tilde(fz, m),
        folded_peak_z: fz,
        window,
        window_mass: folded[window.0] + folded[window.1],
        window_p_tilde: 0.5 * (p_tilde(window.0, m) + p_tilde(window.1, m)),
        folded,
        table,
        shots: None,
    })
}

/// Estimator on sampled counts.
pub fn qae_estimate_counts(hist: &Histogram, m: usize) -> Result<EstimatorResult> {
    let mut r = qae_estimate(&hist.to_distribution(), m)?;
    r.shots = Some(hist.shots());
    Ok(r)
}
