use thiserror::Error;

/// Errors raised while parsing or validating a tree topology file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("topology file contains no nodes")]
    Empty,
    #[error("line {line}: malformed entry `{text}`")]
    Malformed { line: usize, text: String },
    #[error("node {node} is listed more than once")]
    MultipleParents { node: u64 },
    #[error("more than one root (nodes {first} and {second})")]
    MultipleRoots { first: u64, second: u64 },
    #[error("root must have id 0, found {found}")]
    RootNotZero { found: u64 },
    #[error("node {node} names unknown parent {parent}")]
    UnknownParent { node: u64, parent: u64 },
    #[error("parent links of node {node} form a cycle")]
    Cycle { node: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("enumeration of {needed} words exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
    #[error("infeasible rate: {0}")]
    InfeasibleRate(String),
    #[error("block {block} is ambiguous without a final state")]
    AmbiguousBlock { block: usize },
    #[error("state splitting failed: {0}")]
    SplittingFailed(String),
    #[error("state {state} has out-degree {degree}, need {needed}")]
    InsufficientOutDegree { state: usize, degree: usize, needed: usize },
    #[error("edge labels have non-uniform length (expected {expected}, found {found})")]
    NonUniformLabelLength { expected: usize, found: usize },
    #[error("block {block} matches no outgoing codeword")]
    UnknownCodeword { block: usize },
    #[error("word length {len} is not a multiple of block length {n}")]
    RaggedWord { len: usize, n: usize },
    #[error("malformed symbol stream: {0}")]
    MalformedWord(String),
    #[error("malformed encoder description: {0}")]
    MalformedEncoder(String),
    #[error("no reference table for q={0}")]
    UnsupportedQ(u32),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

pub type Result<T> = std::result::Result<T, Error>;
