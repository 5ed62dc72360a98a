use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical input violated its domain (non-positive length, negative density, ...).
    #[error("invalid {field}: {value} ({reason})")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("no energy transfer mechanism: collision frequency and field frequency are both zero")]
    NoEnergyTransfer,

    #[error("energy gain per collision is zero; ionization is impossible")]
    ZeroEnergyGain,

    #[error("axis {axis} is invalid at index {index}: {reason}")]
    InvalidAxis {
        axis: &'static str,
        index: usize,
        reason: &'static str,
    },

    #[error("n_walks = {0} is below the minimum of 100")]
    TooFewWalks(usize),

    #[error("walk {walk} exceeded the hard cap of {cap} collisions")]
    CollisionCapExceeded { walk: u64, cap: u64 },

    #[error("trace is invalid: {0}")]
    InvalidTrace(String),

    #[error("insufficient peaks: found {found}, need at least 2")]
    InsufficientPeaks { found: usize },

    #[error("Lorentzian fit did not converge for peak {peak}: {reason}")]
    FitDiverged { peak: usize, reason: String },

    #[error("removal record {label:?}: {reason}")]
    InvalidRecord { label: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("unknown gas species {0:?}")]
    UnknownGas(String),

    #[error("config: {field}: {reason}")]
    Config { field: String, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            field,
            value,
            reason,
        }
    }

    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short machine-readable tag, printed by the CLI on failure.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::NoEnergyTransfer => "no_energy_transfer",
            Error::ZeroEnergyGain => "zero_energy_gain",
            Error::InvalidAxis { .. } => "invalid_axis",
            Error::TooFewWalks(_) => "too_few_walks",
            Error::CollisionCapExceeded { .. } => "collision_cap_exceeded",
            Error::InvalidTrace(_) => "invalid_trace",
            Error::InsufficientPeaks { .. } => "insufficient_peaks",
            Error::FitDiverged { .. } => "fit_diverged",
            Error::InvalidRecord { .. } => "invalid_record",
            Error::Unsupported(_) => "unsupported",
            Error::UnknownGas(_) => "unknown_gas",
            Error::Config { .. } => "config",
            Error::Io { .. } => "io",
            Error::Csv { .. } => "csv",
            Error::Json(_) => "json",
        }
    }
}
