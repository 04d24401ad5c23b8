use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use twirlmit::algorithms::{
    build_bv, build_deutsch, build_qae, BvInstance, DeutschCase, QaeInstance,
};
use twirlmit::mitigation::{
    apply_policy, calibrate_eta, correct_counts as correct_hist, corrected_to_json,
    mitigate_pipeline, parse_counts_json, simulator_runner, Condition, MitigationConfig,
    NegativePolicy, QuasiDistribution,
};
use twirlmit::scenarios::{Preset, Target};
use twirlmit::sim::{bitstring, run_exact, sample, Circuit, MeasurementModel};

use crate::args::{
    Algo, AlgoArgs, CalibrateArgs, CorrectArgs, EtaArgs, MitigateArgs, Mode, RunArgs, SimulateArgs,
};
use crate::config::{self, AlgorithmConfig, MitigationSection, NoiseEntry, Placement, RunConfig};
use crate::noise;
use crate::output::{
    check_distribution, check_histogram, check_quasi, dist_rows, emit, hist_rows, quasi_rows,
    weights_csv, write_file,
};

const DEFAULT_SHOTS: u64 = 8192;
const DEFAULT_CALIBRATION_SHOTS: u64 = 100_000;

/// Flags override the config's algorithm; `--algo` alone picks a new one.
fn resolve_algorithm(flags: &AlgoArgs, cfg: Option<AlgorithmConfig>) -> Result<AlgorithmConfig> {
    let need = |what: &str, algo: &str| anyhow!("--algo {algo} needs --{what}");
    let base = match (flags.algo, cfg) {
        (Some(algo), Some(c)) if same_algo(algo, &c) => c,
        (Some(Algo::Bv), _) => AlgorithmConfig::Bv {
            s: flags.s.clone().ok_or_else(|| need("s", "bv"))?,
            n: None,
        },
        (Some(Algo::Qae), _) => AlgorithmConfig::Qae {
            m: flags.m.ok_or_else(|| need("m", "qae"))?,
            p: flags.p.ok_or_else(|| need("p", "qae"))?,
        },
        (Some(Algo::Deutsch), _) => AlgorithmConfig::Deutsch {
            case: flags.case.clone().ok_or_else(|| need("case", "deutsch"))?,
        },
        (Some(Algo::Circuit), _) => AlgorithmConfig::Circuit {
            path: flags
                .circuit
                .clone()
                .ok_or_else(|| need("circuit", "circuit"))?,
        },
        (None, Some(c)) => c,
        (None, None) => bail!("no algorithm: pass --algo or a config with [algorithm]"),
    };
    Ok(match base {
        AlgorithmConfig::Bv { s, n } => AlgorithmConfig::Bv {
            s: flags.s.clone().unwrap_or(s),
            n: flags.n.or(n),
        },
        AlgorithmConfig::Qae { m, p } => AlgorithmConfig::Qae {
            m: flags.m.unwrap_or(m),
            p: flags.p.unwrap_or(p),
        },
        AlgorithmConfig::Deutsch { case } => AlgorithmConfig::Deutsch {
            case: flags.case.clone().unwrap_or(case),
        },
        AlgorithmConfig::Circuit { path } => AlgorithmConfig::Circuit {
            path: flags.circuit.clone().unwrap_or(path),
        },
    })
}

fn same_algo(a: Algo, c: &AlgorithmConfig) -> bool {
    matches!(
        (a, c),
        (Algo::Bv, AlgorithmConfig::Bv { .. })
            | (Algo::Qae, AlgorithmConfig::Qae { .. })
            | (Algo::Deutsch, AlgorithmConfig::Deutsch { .. })
            | (Algo::Circuit, AlgorithmConfig::Circuit { .. })
    )
}

/// A built circuit and what its outcomes mean, if fixed by construction.
struct Program {
    name: String,
    circuit: Circuit,
    target: Option<Target>,
}

fn build(algo: &AlgorithmConfig) -> Result<Program> {
    Ok(match algo {
        AlgorithmConfig::Bv { s, n } => {
            let inst = match n {
                Some(n) => BvInstance::with_len(*n, s)?,
                None => BvInstance::new(s)?,
            };
            Program {
                name: format!("bv-{s}"),
                circuit: build_bv(&inst),
                target: Some(Target::Bitstring(s.clone())),
            }
        }
        AlgorithmConfig::Qae { m, p } => Program {
            name: format!("qae-m{m}-p{p}"),
            circuit: build_qae(&QaeInstance::new(*m, *p)?),
            target: Some(Target::Qae { m: *m }),
        },
        AlgorithmConfig::Deutsch { case } => {
            let case: DeutschCase = case.parse()?;
            Program {
                name: format!("deutsch-{case}"),
                circuit: build_deutsch(case),
                target: Some(Target::Bitstring(case.answer().to_string())),
            }
        }
        AlgorithmConfig::Circuit { path } => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading circuit {}", path.display()))?;
            let circuit = Circuit::parse(&text)
                .with_context(|| format!("in circuit file {}", path.display()))?;
            let name = if circuit.name().is_empty() {
                "circuit".to_string()
            } else {
                circuit.name().to_string()
            };
            Program {
                name,
                circuit,
                target: None,
            }
        }
    })
}

fn qae_m(target: &Option<Target>) -> Option<usize> {
    match target {
        Some(Target::Qae { m }) => Some(*m),
        _ => None,
    }
}

struct Run {
    mode: Mode,
    shots: u64,
    seed: u64,
}

/// `--shots` or `--seed` alone imply sampled mode.
fn resolve_run(flags: &RunArgs, cfg: &RunConfig) -> Run {
    let shots = flags.shots.or(cfg.shots);
    let seed = flags.seed.or(cfg.seed);
    let implied = if shots.is_some() || seed.is_some() {
        Mode::Sampled
    } else {
        Mode::Exact
    };
    Run {
        mode: flags.mode.or(cfg.mode).unwrap_or(implied),
        shots: shots.unwrap_or(DEFAULT_SHOTS),
        seed: seed.unwrap_or(0),
    }
}

fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

pub fn simulate(a: SimulateArgs) -> Result<()> {
    let cfg = config::load_opt(a.config.as_deref())?;
    let prog = build(&resolve_algorithm(&a.algo, cfg.algorithm.clone())?)?;
    let entries = noise::entries(&cfg.noise, &a.noise.noise, a.noise.detector)?;
    let model = noise::model(&entries)?;
    let run = resolve_run(&a.run, &cfg);
    let out = a.run.out.clone().or(cfg.out.clone());
    let dist = run_exact(&prog.circuit, &model)?;
    let m = qae_m(&prog.target);
    let n_bits = dist.n_bits();
    let (json, csv) = match run.mode {
        Mode::Exact => {
            check_distribution("distribution", &dist)?;
            (
                dist.to_json(),
                weights_csv(&dist_rows(&dist), n_bits, m, "probability")?,
            )
        }
        Mode::Sampled => {
            if run.shots == 0 {
                bail!("--shots must be positive");
            }
            let h = sample(&dist, run.shots, run.seed)?;
            check_histogram("histogram", &h)?;
            (
                h.to_json(),
                weights_csv(&hist_rows(&h), n_bits, m, "count")?,
            )
        }
    };
    match out {
        Some(dir) => {
            write_file(&dir.join("simulate.json"), &json)?;
            write_file(&dir.join("simulate.csv"), &csv)
        }
        None => emit(None, &json),
    }
}

fn parse_policy(s: &str) -> Result<NegativePolicy> {
    Ok(s.parse()?)
}

/// Correction config: preset or uniform η first, then per-bit values from
/// the config, the counts file, and finally `--eta-bit`.
fn resolve_eta(
    flags: &EtaArgs,
    section: Option<&MitigationSection>,
    file_eta: Option<&BTreeMap<usize, f64>>,
    base: MitigationConfig,
) -> Result<MitigationConfig> {
    let mut cfg = base;
    let preset = flags
        .eta_preset
        .as_deref()
        .or(section.and_then(|s| s.preset.as_deref()));
    if let Some(p) = preset {
        cfg = MitigationConfig::preset(p)?;
    }
    if let Some(e) = section.and_then(|s| s.default_eta) {
        cfg = cfg.with_default_eta(e)?;
    }
    if let Some(e) = flags.eta {
        cfg = cfg.with_default_eta(e)?;
    }
    if let Some(s) = section {
        for (k, v) in &s.eta {
            let bit = k
                .parse()
                .map_err(|_| anyhow!("mitigation.eta key '{k}' is not a bit index"))?;
            cfg = cfg.with_eta(bit, *v)?;
        }
    }
    for (&bit, &v) in file_eta.into_iter().flatten() {
        cfg = cfg.with_eta(bit, v)?;
    }
    for item in &flags.eta_bit {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("--eta-bit '{item}' is not BIT=ETA"))?;
        let bit: usize = k
            .trim()
            .parse()
            .map_err(|_| anyhow!("--eta-bit '{item}': bad bit"))?;
        let eta: f64 = v
            .trim()
            .parse()
            .map_err(|_| anyhow!("--eta-bit '{item}': bad eta"))?;
        cfg = cfg.with_eta(bit, eta)?;
    }
    let policy = flags
        .policy
        .as_deref()
        .or(section.and_then(|s| s.policy.as_deref()));
    if let Some(p) = policy {
        cfg = cfg.with_policy(parse_policy(p)?);
    }
    Ok(cfg)
}

fn quasi_json(q: &QuasiDistribution) -> Value {
    json!(q
        .to_map()
        .into_iter()
        .filter(|(_, w)| *w != 0.0)
        .collect::<BTreeMap<_, _>>())
}

fn scores_json(scores: &[f64; 4]) -> Value {
    let mut m = serde_json::Map::new();
    for (c, s) in Condition::ALL.iter().zip(scores) {
        m.insert(c.name().to_string(), json!(s));
    }
    Value::Object(m)
}

fn target_json(t: &Target) -> Value {
    match t {
        Target::Bitstring(s) => json!({ "bitstring": s }),
        Target::Qae { m } => json!({ "qae_m": m }),
    }
}

fn summary_csv(exact: &[f64; 4], sampled: Option<&[f64; 4]>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match sampled {
        Some(_) => w.write_record(["condition", "exact", "sampled"])?,
        None => w.write_record(["condition", "exact"])?,
    }
    for (i, c) in Condition::ALL.iter().enumerate() {
        let mut row = vec![c.name().to_string(), exact[i].to_string()];
        if let Some(s) = sampled {
            row.push(s[i].to_string());
        }
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn mitigate(a: MitigateArgs) -> Result<()> {
    let cfg = config::load_opt(a.config.as_deref())?;
    let run = resolve_run(&a.run, &cfg);
    let out = a.run.out.clone().or(cfg.out.clone());

    let (name, circuit, entries, base, target) = match &a.preset {
        Some(p) => {
            let preset: Preset = p.parse()?;
            let sc = preset.scenario();
            let entries: Vec<NoiseEntry> = sc
                .noisy_qubits
                .iter()
                .map(|&q| NoiseEntry {
                    qubit: q,
                    placement: Placement::State,
                    channel: sc.noise_spec,
                })
                .collect();
            (
                preset.name().to_string(),
                sc.circuit,
                entries,
                sc.config,
                Some(sc.target),
            )
        }
        None => {
            let prog = build(&resolve_algorithm(&a.algo, cfg.algorithm.clone())?)?;
            let entries = noise::entries(&cfg.noise, &a.noise.noise, a.noise.detector)?;
            if entries.iter().any(|e| e.placement == Placement::Detector) {
                bail!("mitigate needs state noise: the twirl cannot reach detector noise");
            }
            (
                prog.name,
                prog.circuit,
                entries,
                MitigationConfig::default(),
                prog.target,
            )
        }
    };
    let mcfg = resolve_eta(&a.eta, cfg.mitigation.as_ref(), None, base)?;
    let model = noise::model(&entries)?;
    let sampling = (run.mode == Mode::Sampled).then_some((run.shots, run.seed));
    if sampling.is_some() && run.shots == 0 {
        bail!("--shots must be positive");
    }
    let rep = mitigate_pipeline(&circuit, &model, &mcfg, sampling)?;

    let e = &rep.exact;
    for (label, d) in [
        ("ideal", &e.ideal),
        ("noisy", &e.noisy),
        ("twirled", &e.twirled),
    ] {
        check_distribution(label, d)?;
    }
    check_quasi("corrected", &e.corrected)?;
    if let Some(s) = &rep.sampled {
        for (label, h) in [
            ("ideal", &s.ideal),
            ("noisy", &s.noisy),
            ("twirled", &s.twirled),
        ] {
            check_histogram(label, h)?;
        }
        check_quasi("sampled corrected", &s.corrected)?;
    }

    let target =
        target.unwrap_or_else(|| Target::Bitstring(bitstring(e.ideal.argmax(), e.ideal.n_bits())));
    let exact_c = e.conditions();
    let exact_scores: [f64; 4] =
        std::array::from_fn(|i| target.score(&exact_c[i]).unwrap_or(f64::NAN));
    let sampled_c = rep.sampled.as_ref().map(|s| s.conditions());
    let sampled_scores: Option<[f64; 4]> = sampled_c
        .as_ref()
        .map(|c| std::array::from_fn(|i| target.score(&c[i]).unwrap_or(f64::NAN)));

    let cond_map = |c: &[QuasiDistribution; 4]| {
        let mut m = serde_json::Map::new();
        for (cond, q) in Condition::ALL.iter().zip(c) {
            m.insert(cond.name().to_string(), quasi_json(q));
        }
        Value::Object(m)
    };
    let eta: BTreeMap<String, f64> = mcfg
        .eta_map()
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect();
    let report = json!({
        "name": name,
        "target": target_json(&target),
        "noise": entries.iter().map(|e| json!({"qubit": e.qubit, "channel": e.channel})).collect::<Vec<_>>(),
        "correction": {
            "eta": eta,
            "default_eta": mcfg.default_eta(),
            "policy": mcfg.negative_policy().to_string(),
        },
        "exact": {
            "scores": scores_json(&exact_scores),
            "clip_loss": e.clip_loss,
            "conditions": cond_map(&exact_c),
        },
        "sampled": match (&rep.sampled, &sampled_c, &sampled_scores) {
            (Some(s), Some(c), Some(sc)) => json!({
                "shots": s.shots,
                "seed": s.seed,
                "scores": scores_json(sc),
                "clip_loss": s.clip_loss,
                "conditions": cond_map(c),
            }),
            _ => Value::Null,
        },
    });
    let text = to_pretty(&report);
    let Some(dir) = out else {
        return emit(None, &text);
    };
    write_file(&dir.join("mitigate.json"), &text)?;
    write_file(
        &dir.join("mitigate.csv"),
        &summary_csv(&exact_scores, sampled_scores.as_ref())?,
    )?;
    let m = qae_m(&Some(target.clone()));
    let n_bits = e.ideal.n_bits();
    for (cond, q) in Condition::ALL.iter().zip(&exact_c) {
        let csv = weights_csv(&quasi_rows(q)?, n_bits, m, "probability")?;
        write_file(&dir.join(format!("mitigate.{}.csv", cond.name())), &csv)?;
    }
    if let Some(c) = &sampled_c {
        for (cond, q) in Condition::ALL.iter().zip(c) {
            let csv = weights_csv(&quasi_rows(q)?, n_bits, m, "probability")?;
            write_file(
                &dir.join(format!("mitigate.sampled.{}.csv", cond.name())),
                &csv,
            )?;
        }
    }
    Ok(())
}

pub fn correct_counts(a: CorrectArgs) -> Result<()> {
    let text = std::fs::read_to_string(&a.input)
        .with_context(|| format!("reading {}", a.input.display()))?;
    let file = parse_counts_json(&text).with_context(|| format!("in {}", a.input.display()))?;
    check_histogram("input", &file.histogram)?;
    let cfg = resolve_eta(&a.eta, None, file.eta.as_ref(), MitigationConfig::default())?;
    let q = correct_hist(&file.histogram, &cfg)?;
    let (q, loss) = apply_policy(q, cfg.negative_policy())?;
    check_quasi("corrected", &q)?;
    emit(
        a.out.as_deref(),
        &corrected_to_json(&q, cfg.negative_policy(), loss),
    )
}

pub fn calibrate(a: CalibrateArgs) -> Result<()> {
    let cfg = config::load_opt(a.config.as_deref())?;
    let entries = noise::entries(&cfg.noise, &a.noise.noise, a.noise.detector)?;
    let n = a
        .n_qubits
        .or(cfg.n_qubits)
        .unwrap_or_else(|| entries.iter().map(|e| e.qubit + 1).max().unwrap_or(1));
    if n == 0 {
        bail!("--n-qubits must be positive");
    }
    if let Some(e) = entries.iter().find(|e| e.qubit >= n) {
        bail!("noise on qubit {} outside a {n}-qubit register", e.qubit);
    }
    let shots = a.shots.or(cfg.shots).unwrap_or(DEFAULT_CALIBRATION_SHOTS);
    let seed = a.seed.or(cfg.seed).unwrap_or(0);
    let model: MeasurementModel = noise::model(&entries)?;
    let cal = calibrate_eta(simulator_runner(model), n, shots, seed)?;
    let per_qubit = |v: &[f64]| -> BTreeMap<String, f64> {
        v.iter()
            .enumerate()
            .map(|(q, x)| (q.to_string(), *x))
            .collect()
    };
    let report = json!({
        "n_qubits": n,
        "shots": shots,
        "seed": seed,
        "eta": per_qubit(&cal.eta),
        "asymmetry": per_qubit(&cal.asymmetry),
        "eps0": per_qubit(&cal.eps0),
        "eps1": per_qubit(&cal.eps1),
    });
    let out = a.out.or(cfg.out);
    emit(out.as_deref(), &to_pretty(&report))
}
