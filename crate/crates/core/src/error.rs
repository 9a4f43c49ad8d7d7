use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Violation;

/// Errors shared by all modules of the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operands belong to different chains.
    ChainMismatch,
    /// Operands belong to different attribute universes.
    UniverseMismatch,
    /// A degree index lies outside `0..=scale`.
    DegreeOutOfRange { index: u8, scale: u8 },
    /// A textual degree does not denote a value of the chain.
    DegreeNotOnChain { text: String, scale: u8 },
    /// Malformed chain description (scale 0, bad idempotents, bad table size).
    InvalidChainSpec(String),
    /// A hedge table violates the hedge axioms.
    InvalidHedge(Vec<Violation>),
    /// A universe was declared empty or with duplicate attribute names.
    InvalidUniverse(String),
    /// An attribute name that the universe does not contain.
    UnknownAttribute(String),
    /// Malformed set or implication text.
    Parse(String),
    /// An enumeration would exceed the configured capacity.
    Capacity {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    /// The implication is not a member of the theory.
    NotAMember,
    /// An operation required a saturated theory.
    NotSaturated,
    /// An operation required a non-redundant theory.
    Redundant,
    /// A vertex set referred to a set that is not a vertex of the graph.
    ForeignVertex,
    /// The number of objects does not match the number of table rows, or a
    /// row has the wrong width.
    ShapeMismatch(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ChainMismatch => write!(f, "operands use different chains"),
            Error::UniverseMismatch => write!(f, "operands use different attribute universes"),
            Error::DegreeOutOfRange { index, scale } => {
                write!(f, "degree index {index} out of range for scale {scale}")
            }
            Error::DegreeNotOnChain { text, scale } => {
                write!(f, "'{text}' is not a degree of the chain with scale {scale}")
            }
            Error::InvalidChainSpec(msg) => write!(f, "invalid chain: {msg}"),
            Error::InvalidHedge(violations) => {
                write!(f, "hedge table violates {} axiom instance(s)", violations.len())
            }
            Error::InvalidUniverse(msg) => write!(f, "invalid universe: {msg}"),
            Error::UnknownAttribute(name) => write!(f, "unknown attribute '{name}'"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Capacity { what, needed, cap } => {
                write!(f, "capacity exceeded: {what} needs {needed}, cap is {cap}")
            }
            Error::NotAMember => write!(f, "implication is not a member of the theory"),
            Error::NotSaturated => write!(f, "theory is not saturated"),
            Error::Redundant => write!(f, "theory contains redundant implications"),
            Error::ForeignVertex => write!(f, "set is not a vertex of the graph"),
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
