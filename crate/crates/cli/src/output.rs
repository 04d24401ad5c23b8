use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use twirlmit::algorithms::p_tilde;
use twirlmit::mitigation::QuasiDistribution;
use twirlmit::sim::{bitstring, Distribution, Histogram};

/// Tolerance of the self-check on emitted weight tables.
pub const EMIT_SUM_TOL: f64 = 1e-9;

/// An emitted table failed its self-check. Maps to exit code 2.
#[derive(Debug)]
pub struct InvariantViolation(pub String);

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invariant violated: {}", self.0)
    }
}

impl std::error::Error for InvariantViolation {}

fn violation(what: String) -> anyhow::Error {
    InvariantViolation(what).into()
}

pub fn check_distribution(label: &str, d: &Distribution) -> Result<()> {
    let sum: f64 = d.probs().iter().sum();
    if (sum - 1.0).abs() > EMIT_SUM_TOL {
        return Err(violation(format!("{label} sums to {sum}")));
    }
    Ok(())
}

pub fn check_quasi(label: &str, q: &QuasiDistribution) -> Result<()> {
    let sum = q.sum();
    if (sum - 1.0).abs() > EMIT_SUM_TOL {
        return Err(violation(format!("{label} weights sum to {sum}")));
    }
    Ok(())
}

pub fn check_histogram(label: &str, h: &Histogram) -> Result<()> {
    let total: u64 = h.counts().values().sum();
    if total != h.shots() {
        return Err(violation(format!(
            "{label} counts sum to {total}, not {} shots",
            h.shots()
        )));
    }
    Ok(())
}

/// CSV of a weight table. With `qae_m` the rows are every `z` with its
/// `p̃`; otherwise the nonzero bitstrings.
pub fn weights_csv(
    weights: &[(usize, f64)],
    n_bits: usize,
    qae_m: Option<usize>,
    value: &str,
) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match qae_m {
        Some(m) => {
            w.write_record(["z", "p_tilde", value])?;
            for &(z, p) in weights {
                w.write_record([z.to_string(), p_tilde(z, m).to_string(), p.to_string()])?;
            }
        }
        None => {
            w.write_record(["bitstring", value])?;
            for &(i, p) in weights {
                if p != 0.0 {
                    w.write_record([bitstring(i, n_bits), p.to_string()])?;
                }
            }
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn quasi_rows(q: &QuasiDistribution) -> Result<Vec<(usize, f64)>> {
    Ok(q.dense()?.into_iter().enumerate().collect())
}

pub fn hist_rows(h: &Histogram) -> Vec<(usize, f64)> {
    let d = h.to_distribution();
    d.probs()
        .iter()
        .enumerate()
        .map(|(i, f)| (i, (f * h.shots() as f64).round()))
        .collect()
}

pub fn dist_rows(d: &Distribution) -> Vec<(usize, f64)> {
    d.probs().iter().copied().enumerate().collect()
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes `text` to `path`, or to stdout when there is no path.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            let written = out
                .write_all(text.as_bytes())
                .and_then(|()| out.write_all(b"\n"))
                .and_then(|()| out.flush());
            match written {
                // a closed downstream pipe is the reader's choice, not a failure
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
    }
}
