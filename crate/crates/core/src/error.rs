use thiserror::Error;

/// Errors raised by model construction, propagation, sequence execution,
/// parsing, and configuration loading.
#[derive(Debug, Error)]
pub enum Error {
    #[error("wavelength must be positive, got {nm} nm")]
    NonPositiveWavelength { nm: f64 },

    #[error("wavelength {nm} nm outside [{lo} nm, {hi} nm]")]
    WavelengthOutOfRange { nm: f64, lo: f64, hi: f64 },

    #[error("invalid laser: {0}")]
    InvalidLaser(String),

    #[error("invalid rate ledger: {0}")]
    InvalidRates(String),

    #[error("invalid state vector: {0}")]
    InvalidState(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("duration must be non-negative, got {us} us")]
    NegativeDuration { us: f64 },

    #[error("integration step {step_us} us must be positive and no larger than the duration {duration_us} us")]
    BadStep { step_us: f64, duration_us: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid sequence: {0}")]
    Sequence(String),

    #[error("sequence step {index} ({label}) failed: {source}")]
    StepFailed {
        index: usize,
        label: String,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("report has no photocurrent collection window")]
    NoCollectWindow,

    #[error("invalid sweep specification: {0}")]
    InvalidSweep(String),

    #[error("sweep aborted at {axis} = {x}: {source}")]
    SweepFailed {
        axis: String,
        x: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("config {origin}: {msg}")]
    Config { origin: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
