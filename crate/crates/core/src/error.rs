use thiserror::Error;

/// Errors raised while building, reading or analysing a VASS.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: undeclared state `{name}`")]
    UndeclaredState { line: usize, name: String },
    #[error("line {line}: negative guard {value} on state `{state}`")]
    NegativeGuard { line: usize, state: String, value: i64 },
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("invalid state name `{0}`")]
    InvalidName(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
    #[error("transition index {0} out of range")]
    TransitionOutOfRange(usize),
    #[error("path is not connected at edge {0}")]
    BrokenPath(usize),
    #[error("endpoint mismatch: left path ends in {left}, right path starts in {right}")]
    EndpointMismatch { left: usize, right: usize },
    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
    #[error("{0} requires guard-free input")]
    GuardedInput(&'static str),
    #[error("{0} requires single-guard (normalized) input")]
    NotNormalized(&'static str),
    #[error("invalid CNF: {0}")]
    Cnf(String),
    #[error("parameter out of range: {0}")]
    Param(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[inline]
pub(crate) fn add(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

#[inline]
pub(crate) fn sub(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow(what))
}

#[inline]
pub(crate) fn mul(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}
