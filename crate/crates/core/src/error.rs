use num_bigint::BigInt;

use crate::decomp::Sense;
use crate::lattice::{GroundSet, Point};

/// Crate-wide error type. Variant names double as diagnostic kinds in CLI
/// output and exit-code mapping.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("first term must be 1, got {0}")]
    BadFirstTerm(BigInt),

    /// `value < 2 * prev` at `index` (0-based position in the prefix).
    #[error("growth violation at index {index}: {value} < 2 * {prev}")]
    GrowthViolation {
        index: usize,
        value: BigInt,
        prev: BigInt,
    },

    /// A finite-tail sequence cannot supply the terms the query needs.
    #[error("beyond horizon: {0}")]
    BeyondHorizon(String),

    #[error("point {point} is not a member of the {ground} intersection")]
    NotAMember { ground: GroundSet, point: Point },

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("window too large: {width}x{height} cells exceeds {max}x{max}")]
    WindowTooLarge { width: i64, height: i64, max: i64 },

    #[error("{sense} sense does not apply to {ground}")]
    SenseNotApplicable { sense: Sense, ground: GroundSet },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("bad index: {0}")]
    BadIndex(String),

    #[error("bad window: {0}")]
    BadWindow(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable kind name, used by the CLI for diagnostics and exit codes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BadFirstTerm(_) => "BadFirstTerm",
            Error::GrowthViolation { .. } => "GrowthViolation",
            Error::BeyondHorizon(_) => "BeyondHorizon",
            Error::NotAMember { .. } => "NotAMember",
            Error::WindowTooSmall(_) => "WindowTooSmall",
            Error::WindowTooLarge { .. } => "WindowTooLarge",
            Error::SenseNotApplicable { .. } => "SenseNotApplicable",
            Error::NotApplicable(_) => "NotApplicable",
            Error::Overflow(_) => "Overflow",
            Error::BadIndex(_) => "BadIndex",
            Error::BadWindow(_) => "BadWindow",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
