use thiserror::Error;

/// Errors raised by the simulator, the decoders and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("qubit {0} appears more than once in a gate or target list")]
    DuplicateQubit(usize),

    #[error("{num_qubits} qubits exceeds the dense cap of {cap}")]
    TooManyQubits { num_qubits: usize, cap: usize },

    #[error("operator is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("Kraus operators are not complete (max deviation {deviation:e})")]
    IncompleteChannel { deviation: f64 },

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("Pauli string length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("cannot parse Pauli string {input:?}: {reason}")]
    ParsePauli { input: String, reason: String },

    #[error("operator {0} is not Hermitian (phase is ±i)")]
    NonHermitian(String),

    #[error("operator {0} is not a bit-flip string")]
    NotBitFlip(String),

    #[error("operator {0} is not a phase-flip string")]
    NotPhaseFlip(String),

    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),

    #[error("syndrome has length {got}, expected {expected}")]
    SyndromeLength { expected: usize, got: usize },

    #[error("syndrome signals a non-bit-flip error (logical-X outcome is -1)")]
    NonBitFlipSyndrome,

    #[error("measurement outcome is not deterministic (P(+1) = {0})")]
    NonDeterministicOutcome(f64),

    #[error("partition is invalid: {0}")]
    InvalidPartition(String),

    #[error("code order k = {k} is not supported here (allowed {min}..={max})")]
    UnsupportedOrder { k: usize, min: usize, max: usize },

    #[error("ancilla qubit {0} is not in |0>")]
    AncillaNotReset(usize),

    #[error("gate on qubits {qubits:?} crosses the Alice/Bob partition")]
    NonLocalGate { qubits: Vec<usize> },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
