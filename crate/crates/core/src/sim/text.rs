//! Line-oriented circuit text format.
//!
//! ```text
//! file      := line*
//! line      := statement? comment?
//! comment   := '#' any*
//! statement := 'QUBITS' int
//!            | 'NAME' word
//!            | 'DESCRIPTION' any*
//!            | 'GATE' gate-name target{arity} param*
//!            | 'CHANNEL' channel-name target param*
//!            | 'NOISESITE'
//!            | 'MEASURE' ('ALL' | target+)
//! param     := number | ['-'] 'pi' ['/' number] | number '*pi'
//! ```
//!
//! Keywords and gate names are case-insensitive. `QUBITS` comes first.
//! Channel names: `depolarizing eta`, `pauli p0 px py pz`,
//! `xflip|yflip|zflip p`, `xflip_angle|yflip_angle|zflip_angle theta`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use super::circuit::{Circuit, NoiseSpec, Op};
use crate::channels::Axis;
use crate::error::{Error, Result};
use crate::qcore::Gate;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a numeric parameter: a plain number, `pi`, `pi/N` or `N*pi`,
/// optionally negated.
pub fn parse_param(tok: &str) -> Option<f64> {
    let t = tok.to_ascii_lowercase();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t.as_str()),
    };
    if let Some(rest) = body.strip_prefix("pi") {
        if rest.is_empty() {
            return Some(sign * PI);
        }
        let den: f64 = rest.strip_prefix('/')?.parse().ok()?;
        return Some(sign * PI / den);
    }
    if let Some(num) = body.strip_suffix("*pi") {
        return Some(sign * num.parse::<f64>().ok()? * PI);
    }
    body.parse::<f64>().ok().map(|v| sign * v)
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected qubit index, found '{tok}'")))
}

fn parse_params(toks: &[&str], line: usize) -> Result<Vec<f64>> {
    toks.iter()
        .map(|t| parse_param(t).ok_or_else(|| parse_err(line, format!("bad parameter '{t}'"))))
        .collect()
}

impl NoiseSpec {
    /// Builds a spec from a channel name of the text format and its
    /// parameters, e.g. `("xflip", [0.3])`.
    pub fn from_name(name: &str, params: &[f64]) -> Result<NoiseSpec> {
        let lower = name.to_ascii_lowercase();
        let want = |n: usize| {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "channel {name} takes {n} parameters, got {}",
                    params.len()
                )))
            }
        };
        let axis_of = |prefix: &str| prefix.parse::<Axis>();
        let spec = match lower.as_str() {
            "depolarizing" => {
                want(1)?;
                NoiseSpec::Depolarizing { eta: params[0] }
            }
            "pauli" => {
                want(4)?;
                NoiseSpec::Pauli {
                    p0: params[0],
                    px: params[1],
                    py: params[2],
                    pz: params[3],
                }
            }
            "xflip" | "yflip" | "zflip" => {
                want(1)?;
                NoiseSpec::Flip {
                    axis: axis_of(&lower[..1])?,
                    p: params[0],
                }
            }
            "xflip_angle" | "yflip_angle" | "zflip_angle" => {
                want(1)?;
                NoiseSpec::FlipAngle {
                    axis: axis_of(&lower[..1])?,
                    theta: params[0],
                }
            }
            _ => return Err(Error::InvalidArgument(format!("unknown channel '{name}'"))),
        };
        // reject out-of-range weights here rather than at first use
        spec.pauli()?;
        Ok(spec)
    }
}

/// Parses the text format. Errors carry the 1-based line number.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circ: Option<Circuit> = None;
    let mut name = String::new();
    let mut description = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let keyword = toks[0].to_ascii_uppercase();
        let at = |e: Error| match e {
            Error::Parse { .. } => e,
            other => parse_err(line, other.to_string()),
        };
        if keyword == "QUBITS" {
            if circ.is_some() {
                return Err(parse_err(line, "QUBITS given twice"));
            }
            let n = match toks.as_slice() {
                [_, n] => parse_index(n, line)?,
                _ => return Err(parse_err(line, "QUBITS takes one integer")),
            };
            if n == 0 {
                return Err(parse_err(line, "QUBITS must be positive"));
            }
            circ = Some(Circuit::new(n));
            continue;
        }
        if keyword == "NAME" {
            name = toks[1..].join(" ");
            continue;
        }
        if keyword == "DESCRIPTION" {
            description = toks[1..].join(" ");
            continue;
        }
        let c = circ
            .as_mut()
            .ok_or_else(|| parse_err(line, "QUBITS must precede other statements"))?;
        match keyword.as_str() {
            "GATE" => {
                let gname = toks
                    .get(1)
                    .ok_or_else(|| parse_err(line, "GATE needs a name"))?;
                let (arity, _) = Gate::signature(gname).map_err(at)?;
                if toks.len() < 2 + arity {
                    return Err(parse_err(line, format!("{gname} needs {arity} targets")));
                }
                let targets = toks[2..2 + arity]
                    .iter()
                    .map(|t| parse_index(t, line))
                    .collect::<Result<Vec<_>>>()?;
                let params = parse_params(&toks[2 + arity..], line)?;
                let gate = Gate::from_name(gname, &params).map_err(at)?;
                c.gate(gate, &targets).map_err(at)?;
            }
            "CHANNEL" => {
                if toks.len() < 3 {
                    return Err(parse_err(line, "CHANNEL needs a name and a target"));
                }
                let target = parse_index(toks[2], line)?;
                let params = parse_params(&toks[3..], line)?;
                let spec = NoiseSpec::from_name(toks[1], &params).map_err(at)?;
                c.noise(spec, target).map_err(at)?;
            }
            "NOISESITE" => {
                c.noise_site();
            }
            "MEASURE" => {
                if toks.len() == 2 && toks[1].eq_ignore_ascii_case("ALL") {
                    c.measure_all();
                } else {
                    let targets = toks[1..]
                        .iter()
                        .map(|t| parse_index(t, line))
                        .collect::<Result<Vec<_>>>()?;
                    if targets.is_empty() {
                        return Err(parse_err(line, "MEASURE needs targets"));
                    }
                    c.measure(&targets).map_err(at)?;
                }
            }
            _ => return Err(parse_err(line, format!("unknown statement '{}'", toks[0]))),
        }
    }
    let circ = circ.ok_or_else(|| parse_err(0, "missing QUBITS statement"))?;
    Ok(circ.named(name, description))
}

fn spec_line(spec: &NoiseSpec, target: usize) -> String {
    match *spec {
        NoiseSpec::Depolarizing { eta } => format!("CHANNEL depolarizing {target} {eta}"),
        NoiseSpec::Pauli { p0, px, py, pz } => {
            format!("CHANNEL pauli {target} {p0} {px} {py} {pz}")
        }
        NoiseSpec::Flip { axis, p } => format!("CHANNEL {axis}flip {target} {p}"),
        NoiseSpec::FlipAngle { axis, theta } => {
            format!("CHANNEL {axis}flip_angle {target} {theta}")
        }
    }
}

/// Serializes to the text format; `parse_circuit` inverts it exactly.
pub fn circuit_to_text(circ: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "QUBITS {}", circ.n_qubits()).unwrap();
    if !circ.name().is_empty() {
        writeln!(out, "NAME {}", circ.name()).unwrap();
    }
    if !circ.description().is_empty() {
        writeln!(out, "DESCRIPTION {}", circ.description()).unwrap();
    }
    for op in circ.ops() {
        match op {
            Op::Gate { gate, targets } => {
                write!(out, "GATE {}", gate.name()).unwrap();
                for t in targets {
                    write!(out, " {t}").unwrap();
                }
                for p in gate.params() {
                    // `{:?}` keeps enough digits to round-trip
                    write!(out, " {p:?}").unwrap();
                }
                out.push('\n');
            }
            Op::Noise { noise, target } => {
                writeln!(out, "{}", spec_line(noise, *target)).unwrap();
            }
            Op::NoiseSite => out.push_str("NOISESITE\n"),
        }
    }
    if circ.has_measurement() {
        let list: Vec<String> = circ.measured().iter().map(|q| q.to_string()).collect();
        writeln!(out, "MEASURE {}", list.join(" ")).unwrap();
    }
    out
}

impl Circuit {
    pub fn parse(text: &str) -> Result<Circuit> {
        parse_circuit(text)
    }

    pub fn to_text(&self) -> String {
        circuit_to_text(self)
    }

    /// Appends every op of `other` (same width) to `self`.
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                actual: other.n_qubits(),
            });
        }
        for op in other.ops() {
            self.push_op(op.clone());
        }
        Ok(())
    }
}
