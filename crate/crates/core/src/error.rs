use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The policy configuration is unusable (e.g. push-out with B < 2L).
    #[error("configuration error: {0}")]
    Config(String),

    /// Generator parameters outside the construction's regime.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A closed-form bound was queried outside the regime it holds in.
    #[error("regime error: {0}")]
    Regime(String),

    #[error("oracle infeasible: budget of {budget} states exceeded")]
    OracleInfeasible { budget: u64 },

    #[error("ratio undefined: {0}")]
    UndefinedRatio(String),

    #[error("trace error at line {line}: {msg}")]
    TraceParse { line: usize, msg: String },

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    /// Bad command-line usage.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
