use alloc::string::String;
use core::fmt;

/// Errors raised by constructors and operations whose inputs are unusable.
///
/// Checks that produce a verdict on otherwise well-formed data (group axioms,
/// cocycle identities, Kraus proportionality) return reports instead.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix or state dimensions do not fit together.
    Shape(String),
    /// A value violates a structural requirement (non-unitary input, bad projectors, ...).
    Validation(String),
    /// An operation's precondition does not hold (e.g. non-commuting `U(f)`).
    Precondition(String),
    /// No catalog entry with this name.
    UnknownEntry(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::UnknownEntry(name) => write!(f, "unknown catalog entry `{name}`"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}
