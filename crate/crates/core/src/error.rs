use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building or running circuits and
/// post-processing their statistics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("gate `{gate}` takes {expected} parameter(s), got {actual}")]
    ParamCount {
        gate: String,
        expected: usize,
        actual: usize,
    },

    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("operation acts on {expected} qubit(s) but {actual} target(s) were given")]
    ArityMismatch { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty qubit list")]
    EmptyQubitList,

    #[error("invalid probabilities: {0}")]
    InvalidProbability(String),

    #[error("noise rate {0} outside the allowed range")]
    InvalidEta(f64),

    #[error("expected a single-qubit channel, got {0} qubits")]
    NotSingleQubit(usize),

    #[error("expected {expected} per-qubit channels, got {actual}")]
    ChannelCount { expected: usize, actual: usize },

    #[error("unknown noise axis `{0}`")]
    UnknownAxis(String),

    #[error("circuit has no terminal measurement")]
    NoMeasurement,

    #[error(
        "twirl layers cannot be inserted inside a detector; \
         use state-noise mode to model noise between the last gate and the detector"
    )]
    TwirlInDetectorMode,

    #[error("bitstring `{bits}` does not have {n_bits} bits")]
    BitLengthMismatch { bits: String, n_bits: usize },

    #[error("invalid bitstring `{0}`")]
    InvalidBitstring(String),

    #[error("counts sum to {sum} but shots = {shots}")]
    ShotMismatch { sum: u64, shots: u64 },

    #[error("shots must be positive")]
    ZeroShots,

    #[error("all weights vanish after clipping")]
    AllZero,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Json(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}
