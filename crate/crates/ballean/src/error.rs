use std::fmt;

/// Structural failures: malformed presentations, mismatched windows, or
/// domains too large to enumerate.  Checks that merely *fail* (a violated
/// invariant, an unsatisfiable scenario) are reported through their own
/// report types, not through this enum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must share a window do not.
    WindowMismatch { context: &'static str },
    /// A point id or label does not belong to the window.
    UnknownPoint { detail: String },
    /// A label occurs twice in a window definition.
    DuplicateLabel { label: String },
    /// A bornology base element is empty.
    EmptyBaseElement,
    /// A chain base is not strictly increasing at the given position.
    NonStrictChain { position: usize },
    /// The top of a chain base misses part of the window.
    ChainDoesNotCoverWindow { missing: String },
    /// A graph window is not connected.
    Disconnected { left: String, right: String },
    /// A parameter is out of range or inconsistent.
    BadParameter { what: String },
    /// An enumeration would exceed the stated size limit.
    DomainTooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    /// An order operation needs split markers but the order has none.
    MissingSplit,
    /// Split markers are not adjacent in the order, or not distinct points.
    InvalidSplit { detail: String },
    /// A selector lacks an assignment the operation must consult.
    MissingAssignment { subset: String },
    /// A selector has the wrong domain kind for the operation.
    BadSelectorDomain { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::WindowMismatch { context } => {
                write!(f, "window mismatch in {context}")
            }
            Error::UnknownPoint { detail } => write!(f, "unknown point: {detail}"),
            Error::DuplicateLabel { label } => write!(f, "duplicate label {label:?}"),
            Error::EmptyBaseElement => write!(f, "bornology base elements must be nonempty"),
            Error::NonStrictChain { position } => {
                write!(f, "chain is not strictly increasing at position {position}")
            }
            Error::ChainDoesNotCoverWindow { missing } => {
                write!(f, "chain top does not cover the window; missing {missing}")
            }
            Error::Disconnected { left, right } => {
                write!(f, "graph window is disconnected: no path from {left} to {right}")
            }
            Error::BadParameter { what } => write!(f, "bad parameter: {what}"),
            Error::DomainTooLarge { what, size, limit } => {
                write!(f, "{what} would enumerate {size} elements (limit {limit})")
            }
            Error::MissingSplit => write!(f, "order has no split markers"),
            Error::InvalidSplit { detail } => write!(f, "invalid split markers: {detail}"),
            Error::MissingAssignment { subset } => {
                write!(f, "selector has no assignment for {subset}")
            }
            Error::BadSelectorDomain { detail } => {
                write!(f, "selector domain mismatch: {detail}")
            }
        }
    }
}

impl std::error::Error for Error {}
