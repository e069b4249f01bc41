use thiserror::Error;

/// Errors raised by the counting, ensemble and recall routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("m = {m} exceeds the supported maximum of {max}")]
    TooLarge { m: usize, max: usize },
    #[error("m must be at least 1")]
    ZeroSize,
    #[error("k = {k} exceeds m = {m}")]
    SubsetTooLarge { k: usize, m: usize },
    #[error("set family is empty")]
    EmptyFamily,
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("duplicate label at position {0}")]
    DuplicateLabel(usize),
    #[error("not a permutation of the base pattern")]
    NotAPermutation,
    #[error("component {index} = {value} lies outside [0, 1]")]
    ComponentOutOfRange { index: usize, value: f64 },
    #[error("vector must have at least one component")]
    EmptyVector,
    #[error("tolerance {0} must satisfy 0 <= tolerance < 1")]
    InvalidTolerance(f64),
    #[error("threshold {0} lies outside [0, 1]")]
    InvalidThreshold(f64),
    #[error("noise rate {0} lies outside [0, 1]")]
    InvalidNoiseRate(f64),
    #[error("pattern memory is empty")]
    EmptyMemory,
    #[error("reduced memory keeps {k} members but only {chi} have a fixed element")]
    ReducedTooLarge { k: usize, chi: usize },
    #[error("pattern size {0} is outside the experiment range 2..=8")]
    PatternSizeOutOfRange(usize),
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("noise grid must be sorted ascending")]
    UnsortedGrid,
    #[error("alphabet needs at least {min} levels, got {levels}")]
    AlphabetTooSmall { levels: usize, min: usize },
    #[error("value {0} is not a level of the encoding alphabet")]
    NotInAlphabet(f64),
}

pub type Result<T> = core::result::Result<T, Error>;
