//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A point lies outside the box domain it was supposed to belong to.
    #[error("point ({x}, {y}) lies outside the domain")]
    PointOutsideDomain { x: f64, y: f64 },

    /// A box is not contained in the domain.
    #[error("box is not contained in the domain")]
    BoxOutsideDomain,

    /// Two grid sets with different domains or resolutions were combined.
    #[error("grid sets have incompatible domains or resolutions")]
    IncompatibleGrids,

    /// An operation that needs a non-empty set received an empty one.
    #[error("operation requires a non-empty set")]
    EmptySet,

    /// A sequence of sets expected to be nested failed the subset check.
    #[error("sets are not nested: step {step} gained cell {cell}")]
    NotNested { step: usize, cell: usize },

    /// A map sends part of the domain outside the domain.
    #[error("map is not a self-map of the domain (escape near cell {cell})")]
    NotSelfMap { cell: usize },

    /// A map description is malformed (wrong arity, bad vertex order, ...).
    #[error("invalid map: {0}")]
    InvalidMap(String),

    /// A domain description is malformed (empty, unordered, non-finite).
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    /// Probability weights are not positive or do not sum to one.
    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    /// A symbol is outside `1..=k`.
    #[error("symbol {symbol} out of range for a system of {k} maps")]
    SymbolOutOfRange { symbol: u8, k: usize },

    /// A finite symbol stream was read past its end.
    #[error("symbol stream exhausted at index {index}")]
    StreamExhausted { index: usize },

    /// No contraction certificate was found within the budget.
    #[error("no contraction certificate found within the budget")]
    NoCertificate,

    /// A set expected to be mapped into itself by the operator is not.
    #[error("set is not forward-invariant: operator image gains cell {cell}")]
    NotForwardInvariant { cell: usize },

    /// A config file failed to parse.
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    /// A command-line invocation was malformed in a way argument parsing
    /// alone cannot catch (bad resolution, missing source, ...).
    #[error("{0}")]
    Usage(String),

    /// A check was requested whose hypothesis could not be established.
    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),

    /// A tail of an orbit was requested starting past its end.
    #[error("tail start {start} exceeds orbit length {len}")]
    TailOutOfRange { start: usize, len: usize },

    /// An unknown example name was requested.
    #[error("unknown example {0:?}")]
    UnknownExample(String),

    /// A set file failed to parse.
    #[error("set file: {0}")]
    SetFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
