use thiserror::Error;

use crate::lattice::Statistics;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice specification: {0}")]
    InvalidSpec(String),

    #[error("site label {site} outside [-{half_width}, {half_width}]")]
    SiteOutOfRange { site: i64, half_width: usize },

    #[error("both particles placed on site {site}, forbidden for {statistics}")]
    DoubleOccupancy { site: i64, statistics: Statistics },

    #[error("pair ({0}, {1}) is not in basis order")]
    UnorderedPair(i64, i64),

    #[error("quasi-momentum index {alpha} outside [-{half_width}, {half_width}]")]
    AlphaOutOfRange { alpha: i64, half_width: usize },

    #[error("total quasi-momentum {momentum} is not on the 2 pi alpha / L_t grid")]
    OffGrid { momentum: f64 },

    #[error("operation requires {expected} statistics, got {found}")]
    WrongStatistics {
        expected: &'static str,
        found: Statistics,
    },

    #[error("quantization condition has a degenerate denominator (|d| = {modulus:e})")]
    DegenerateDenominator { modulus: f64 },

    #[error("no bound state at K = {k}: |V| = {v_abs} <= |J_K| = {jk_abs}")]
    NoBoundState { k: f64, v_abs: f64, jk_abs: f64 },

    #[error("boson bound-state closed form invalid: beta^2 (beta^2 + 11) = {value} <= 1")]
    InvalidBosonRegime { value: f64 },

    #[error("interaction V must be nonzero")]
    ZeroInteraction,

    #[error("walk front reached the lattice boundary at t = {time} (weight {weight:.3e})")]
    BoundaryContamination { time: f64, weight: f64 },

    #[error("cone fit needs at least {required} points, found {found}")]
    InsufficientPoints { found: usize, required: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("config file: {0}")]
    Toml(#[from] toml::de::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundaryContamination { .. }
            | Error::NoBoundState { .. }
            | Error::InvalidBosonRegime { .. }
            | Error::DegenerateDenominator { .. }
            | Error::InsufficientPoints { .. } => 3,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}
