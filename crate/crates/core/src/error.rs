use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity exceeded: {requested} qubits requested, limit is {limit}")]
    Capacity { requested: usize, limit: usize },

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitIndex { index: usize, num_qubits: usize },

    #[error("gate operands must be distinct (qubit {0} used twice)")]
    DuplicateOperand(usize),

    #[error("unknown backend '{0}'")]
    UnknownBackend(String),

    #[error("backend '{0}' is already registered")]
    DuplicateBackend(String),

    #[error("unknown algorithm '{0}'")]
    UnknownAlgorithm(String),

    #[error("algorithm '{0}' is already registered")]
    DuplicateAlgorithm(String),

    #[error("invalid parameter '{param}': {reason}")]
    Validation { param: String, reason: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("sifted key too short for verification ({0} bits, need at least 2)")]
    KeyTooShort(usize),

    #[error("malformed heatmap csv at line {line}: {reason}")]
    Csv { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(param: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            param: param.into(),
            reason: reason.into(),
        }
    }

    /// True for errors caused by user input rather than by the environment.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}
