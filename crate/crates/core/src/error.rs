use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Every variant carries a stable kebab-case code (see [`Error::code`]) that
/// the command-line front end prints and that tests match on.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty-candidates: no candidates remain after masking")]
    EmptyCandidates,
    #[error("invalid-score: non-finite score at position {index}")]
    InvalidScore { index: usize },
    #[error("true-candidate-missing: no unmasked candidate carries the true score {score}")]
    TrueCandidateMissing { score: f64 },
    #[error("mask-length-mismatch: {scores} scores but {mask} mask entries")]
    MaskLengthMismatch { scores: usize, mask: usize },
    #[error("rank-out-of-bounds: offending task indices {indices:?}")]
    RankOutOfBounds { indices: Vec<usize> },
    #[error("empty-set: a rank set needs at least one task")]
    EmptySet,
    #[error("empty-input: {0}")]
    EmptyInput(String),
    #[error("non-positive-input: power means require strictly positive values (got {value})")]
    NonPositiveInput { value: f64 },
    #[error("invalid-order: power mean order must not be NaN")]
    InvalidOrder,
    #[error("unsupported-composition: {0}")]
    UnsupportedComposition(String),
    #[error("direction-mismatch: metric {name} declared {declared} but evaluates as {observed}")]
    DirectionMismatch {
        name: String,
        declared: &'static str,
        observed: &'static str,
    },
    #[error("unknown-metric: {0}")]
    UnknownMetric(String),
    #[error("invalid-size: candidate set sizes must be >= 1 (got {0})")]
    InvalidSize(u64),
    #[error("no-closed-form: {0} has no closed-form null statistics; use Monte Carlo")]
    NoClosedForm(String),
    #[error("degenerate-size: the continuous approximation is undefined for N = 1")]
    DegenerateSize,
    #[error("insufficient-samples: Monte Carlo needs at least 2 samples (got {0})")]
    InsufficientSamples(usize),
    #[error("adjustment-not-applicable: {0}")]
    AdjustmentNotApplicable(String),
    #[error("invalid-null: {0}")]
    InvalidNull(String),
    #[error("degenerate-adjustment: optimum and expectation coincide ({expectation})")]
    DegenerateAdjustment { expectation: f64 },
    #[error("zero-variance: the null variance is zero")]
    ZeroVariance,
    #[error("conflicting-record: {0} already exists with different statistics")]
    ConflictingRecord(String),
    #[error("not-found: {0}")]
    NotFound(String),
    #[error("corrupt-database: {path}:{line}: {message}")]
    CorruptDatabase {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("parse-error: {source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },
    #[error("invalid-argument: {0}")]
    InvalidArgument(String),
    #[error("storage-error: {context}: {source}")]
    Storage {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

/// Broad class of an error, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Numerical,
    Io,
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyCandidates => "empty-candidates",
            Error::InvalidScore { .. } => "invalid-score",
            Error::TrueCandidateMissing { .. } => "true-candidate-missing",
            Error::MaskLengthMismatch { .. } => "mask-length-mismatch",
            Error::RankOutOfBounds { .. } => "rank-out-of-bounds",
            Error::EmptySet => "empty-set",
            Error::EmptyInput(_) => "empty-input",
            Error::NonPositiveInput { .. } => "non-positive-input",
            Error::InvalidOrder => "invalid-order",
            Error::UnsupportedComposition(_) => "unsupported-composition",
            Error::DirectionMismatch { .. } => "direction-mismatch",
            Error::UnknownMetric(_) => "unknown-metric",
            Error::InvalidSize(_) => "invalid-size",
            Error::NoClosedForm(_) => "no-closed-form",
            Error::DegenerateSize => "degenerate-size",
            Error::InsufficientSamples(_) => "insufficient-samples",
            Error::AdjustmentNotApplicable(_) => "adjustment-not-applicable",
            Error::InvalidNull(_) => "invalid-null",
            Error::DegenerateAdjustment { .. } => "degenerate-adjustment",
            Error::ZeroVariance => "zero-variance",
            Error::ConflictingRecord(_) => "conflicting-record",
            Error::NotFound(_) => "not-found",
            Error::CorruptDatabase { .. } => "corrupt-database",
            Error::Parse { .. } => "parse-error",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Storage { .. } => "storage-error",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NoClosedForm(_)
            | Error::DegenerateSize
            | Error::DegenerateAdjustment { .. }
            | Error::ZeroVariance
            | Error::InvalidNull(_) => ErrorClass::Numerical,
            Error::Storage { .. } => ErrorClass::Io,
            _ => ErrorClass::Input,
        }
    }

    pub(crate) fn storage(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Storage {
            context: context.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
