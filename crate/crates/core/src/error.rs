use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {n} outside 1..={max}")]
    VertexCount { n: usize, max: usize },
    #[error("edge {edge} has an endpoint outside 0..{n}")]
    VertexOutOfRange { edge: Edge, n: usize },
    #[error("edge {0} is not present")]
    EdgeNotPresent(Edge),
}

/// Text-format failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("color {color} outside 0..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("coloring has {actual} colors, spec has {expected}")]
    ColorCountMismatch { expected: usize, actual: usize },
    #[error("input coloring contains a monochromatic clique")]
    NotGood,
    #[error("input coloring leaves edge {0} uncolored")]
    NotFull(Edge),
    #[error("unsupported Paley order {0}: need a prime q = 1 mod 4")]
    UnsupportedPaleyOrder(u64),
    #[error("invalid Ramsey signature: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: lower bound {lower} exceeds upper bound {upper}")]
    InconsistentInterval { line: usize, lower: u64, upper: u64 },
    #[error("entries for {sizes:?} do not overlap: [{a_lo}, {a_hi}] vs [{b_lo}, {b_hi}]")]
    DisjointIntervals { sizes: Vec<u32>, a_lo: u64, a_hi: u64, b_lo: u64, b_hi: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no tuple satisfies the size constraints: {0}")]
    Infeasible(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration needs {needed} colorings, budget allows {allowed}")]
    BudgetExceeded { needed: u128, allowed: u128 },
    #[error("{n} vertices exceeds the enumeration cap of {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("search aborted after {visited} nodes without a conclusion (budget {allowed})")]
    SearchBudgetExhausted { visited: u64, allowed: u64 },
    #[error("engine and direct enumeration disagree: {engine} vs {direct}")]
    Mismatch { engine: u64, direct: u64 },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}
