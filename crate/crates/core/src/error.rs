use thiserror::Error;

use crate::poset::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set must be non-empty")]
    EmptyGroundSet,

    #[error("element {x} out of range for n = {n}")]
    OutOfRange { x: usize, n: usize },

    #[error("time index {t} out of range for walk length {n}")]
    TimeOutOfRange { t: usize, n: usize },

    #[error("not a partial order: {0}")]
    InvalidPoset(Violation),

    #[error("poset has {factors} factors; a single factor is required")]
    NotOneFactor { factors: usize },

    #[error("poset has width {width}; width at most 2 is required")]
    WidthTooLarge { width: usize },

    #[error("invalid two-chain cover: {0}")]
    InvalidCover(String),

    #[error("invalid walk pair: {0}")]
    InvalidWalkPair(String),

    #[error("{what}: n = {n} exceeds the limit {limit}{}", flag.map(|f| format!(" (raise with {f})")).unwrap_or_default())]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
        flag: Option<&'static str>,
    },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("sample set is empty")]
    EmptySamples,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
