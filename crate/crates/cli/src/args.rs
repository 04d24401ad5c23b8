use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "twirlmit",
    version,
    about = "Simulate circuits with readout noise and mitigate it by twirling and depolarization inversion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one circuit and write its outcome table.
    Simulate(SimulateArgs),
    /// Compare ideal, noisy, twirled and corrected runs of one circuit.
    Mitigate(MitigateArgs),
    /// Apply the depolarization inverse to a recorded counts file.
    CorrectCounts(CorrectArgs),
    /// Estimate per-qubit readout error from basis-state circuits.
    Calibrate(CalibrateArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Bv,
    Qae,
    Deutsch,
    Circuit,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Sampled,
}

#[derive(Args, Debug, Default)]
pub struct AlgoArgs {
    /// Algorithm to build.
    #[arg(long, value_enum)]
    pub algo: Option<Algo>,
    /// BV register size (defaults to the length of --s).
    #[arg(long)]
    pub n: Option<usize>,
    /// BV hidden bitstring.
    #[arg(long)]
    pub s: Option<String>,
    /// QAE evaluation qubits.
    #[arg(long)]
    pub m: Option<usize>,
    /// QAE amplitude.
    #[arg(long)]
    pub p: Option<f64>,
    /// Deutsch function: constant0, constant1, balanced_id, balanced_not.
    #[arg(long)]
    pub case: Option<String>,
    /// Circuit file in the text format, for --algo circuit.
    #[arg(long)]
    pub circuit: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct NoiseArgs {
    /// Readout noise as QUBIT:CHANNEL:PARAMS, e.g. 4:xflip:0.3 or
    /// 0:pauli:0.7,0.1,0.1,0.1. Repeatable.
    #[arg(long = "noise", value_name = "SPEC")]
    pub noise: Vec<String>,
    /// Apply --noise entries to the detectors instead of the state.
    #[arg(long)]
    pub detector: bool,
}

#[derive(Args, Debug, Default)]
pub struct RunArgs {
    /// Exact probabilities or sampled counts.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory; without it the JSON goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// TOML run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug)]
pub struct MitigateArgs {
    /// Pinned scenario: fig3-single, fig3-double, fig4-single, fig4-double.
    #[arg(long, conflicts_with_all = ["config", "algo", "noise"])]
    pub preset: Option<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub eta: EtaArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug, Default)]
pub struct EtaArgs {
    /// Correction strength for every bit without a per-bit value.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Per-bit correction strength as BIT=ETA. Repeatable.
    #[arg(long = "eta-bit", value_name = "BIT=ETA")]
    pub eta_bit: Vec<String>,
    /// Named strength: ibm-low (0.02) or ibm-high (0.05).
    #[arg(long = "eta-preset")]
    pub eta_preset: Option<String>,
    /// Handling of negative corrected weights: quasi or clip_renormalize.
    #[arg(long)]
    pub policy: Option<String>,
}

#[derive(Args, Debug)]
pub struct CorrectArgs {
    /// Counts JSON: {"counts": {...}, "shots": N, "eta": {...}}.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub eta: EtaArgs,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CalibrateArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub noise: NoiseArgs,
    /// Register size (defaults to one past the highest noisy qubit).
    #[arg(long = "n-qubits")]
    pub n_qubits: Option<usize>,
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
