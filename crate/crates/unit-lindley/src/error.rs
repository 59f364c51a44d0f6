//! Error type shared across the crate.

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by distribution evaluation, estimation, simulation, and I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter {name}={value}: must satisfy {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("argument {name}={value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("no sign change over [{lo}, {hi}]: f(lo)={flo:e}, f(hi)={fhi:e}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        flo: f64,
        fhi: f64,
    },

    #[error("root finding did not converge within {iterations} iterations")]
    RootNoConvergence { iterations: usize },

    #[error("value at index {index} is outside [0, 1]: {value}")]
    ValueOutOfRange { index: usize, value: f64 },

    #[error("empty sample")]
    EmptySample,

    #[error("sample incompatible with the model: {0}")]
    ModelMismatch(String),

    #[error("boundary sample: {0}")]
    BoundarySample(String),

    #[error("no interior observations in (0, 1)")]
    NoInteriorData,

    #[error("confidence level {0} outside (0.5, 1)")]
    InvalidLevel(f64),

    #[error("stationarity check failed at theta={theta}: |score| = {residual:e}")]
    ScoreCheck { theta: f64, residual: f64 },

    #[error("optimizer did not converge after {iterations} iterations ({context})")]
    NonConvergence { iterations: usize, context: String },

    #[error("model cdf is not monotone near x={at}")]
    InvalidCdf { at: f64 },

    #[error("invalid simulation spec: {0}")]
    InvalidSpec(String),

    #[error("all {replications} replications failed fit preconditions at n={n}")]
    AllReplicationsFailed { n: usize, replications: usize },

    #[error("column {0:?} not found in header")]
    MissingColumn(String),

    #[error("row {row}: cannot parse {content:?} as a number")]
    ParseValue { row: usize, content: String },

    #[error("row {row}: value {value} outside [0, 1]")]
    RowOutOfRange { row: usize, value: f64 },

    #[error("incompatible options: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 usage, 3 data validation, 4 estimation,
    /// 5 non-convergence.
    pub fn exit_code(&self) -> u8 {
        use Error::*;
        match self {
            Usage(_) | InvalidParameter { .. } | InvalidLevel(_) | InvalidSpec(_) => 2,
            Io(_)
            | Csv(_)
            | ParseValue { .. }
            | RowOutOfRange { .. }
            | MissingColumn(_)
            | EmptySample
            | ValueOutOfRange { .. } => 3,
            RootNoConvergence { .. } | NonConvergence { .. } => 5,
            _ => 4,
        }
    }
}
