use std::fmt;

use thiserror::Error;

/// Which Gram matrix failed to factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramId {
    Individual(usize),
    Pooled,
}

impl fmt::Display for GramId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GramId::Individual(i) => write!(f, "individual {i}"),
            GramId::Pooled => f.write_str("pooled"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("SingularGram: Gram matrix of {which} is singular (rcond {rcond:.3e})")]
    SingularGram { which: GramId, rcond: f64 },

    #[error("AlreadyDemeaned: within transformation already applied")]
    AlreadyDemeaned,

    #[error("LagTooLarge: lag {lag} leaves no degrees of freedom (T={t_len}, K={k})")]
    LagTooLarge { lag: usize, t_len: usize, k: usize },

    #[error("InvalidBandwidth: bandwidth {bandwidth} outside [1, {max}]")]
    InvalidBandwidth { bandwidth: usize, max: usize },

    #[error("ZeroScale: scale function is {value:.3e} at t={t}")]
    ZeroScale { t: usize, value: f64 },

    #[error("DegenerateVariance: variance {value:.3e} is not positive")]
    DegenerateVariance { value: f64 },

    #[error("NonpositiveVariance: cannot build an interval from variance {value:.3e}")]
    NonpositiveVariance { value: f64 },

    #[error("OutOfRange: probability {0} not in (0, 1)")]
    OutOfRange(f64),

    #[error("UnsupportedCrossPair: {0} has no cross-individual form")]
    UnsupportedCrossPair(&'static str),

    #[error("InvalidPanel: {0}")]
    InvalidPanel(String),

    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
}

impl Error {
    /// Short machine-readable name used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SingularGram { .. } => "SingularGram",
            Error::AlreadyDemeaned => "AlreadyDemeaned",
            Error::LagTooLarge { .. } => "LagTooLarge",
            Error::InvalidBandwidth { .. } => "InvalidBandwidth",
            Error::ZeroScale { .. } => "ZeroScale",
            Error::DegenerateVariance { .. } => "DegenerateVariance",
            Error::NonpositiveVariance { .. } => "NonpositiveVariance",
            Error::OutOfRange(_) => "OutOfRange",
            Error::UnsupportedCrossPair(_) => "UnsupportedCrossPair",
            Error::InvalidPanel(_) => "InvalidPanel",
            Error::ShapeMismatch(_) => "ShapeMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
