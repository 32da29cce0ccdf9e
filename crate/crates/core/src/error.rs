use num_bigint::BigUint;
use thiserror::Error;

use crate::coloring::RefusalWitness;

/// Errors raised while building, parsing, or checking partitions and trees.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("labels must be non-empty")]
    EmptyLabel,
    #[error("label `{0}` occurs more than once in the leaf set")]
    DuplicateLabel(String),
    #[error("a leaf set needs at least 2 labels, got {0}")]
    TooFewTaxa(usize),
    #[error("label `{0}` is not part of the leaf set")]
    UnknownLabel(String),

    #[error("partition contains an empty block")]
    EmptyBlock,
    #[error("label `{0}` is not covered by any block")]
    CoverageGap(String),
    #[error("label `{0}` occurs in more than one block")]
    BlockOverlap(String),
    #[error("partitions are defined on different leaf sets")]
    GroundSetMismatch,

    #[error("hierarchy contains an empty cluster")]
    EmptyCluster,
    #[error("clusters {{{0}}} and {{{1}}} overlap")]
    OverlappingClusters(String, String),
    #[error("hierarchy does not contain the full leaf set")]
    MissingGroundSet,
    #[error("hierarchy does not contain the singleton {{{0}}}")]
    MissingSingleton(String),
    #[error("argument must be a non-empty set")]
    EmptyArgument,

    #[error("tree and partition are defined on different leaf sets")]
    LeafSetMismatch,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("vertex {0} is not an inner vertex")]
    NotInnerVertex(usize),
    #[error("operation needs at least 3 leaves, got {0}")]
    TooFewLeaves(usize),

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("leaf `{0}` occurs more than once")]
    DuplicateLeaf(String),
    #[error("tree has an inner vertex with a single child")]
    UnaryInnerVertex,
    #[error("input contains no tree")]
    EmptyTree,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    #[error("{0}")]
    Format(String),
    #[error("line {line}: {source}")]
    Line { line: usize, source: Box<Error> },

    #[error("edge `{0}` does not belong to the tree")]
    ForeignEdge(String),
    #[error("tree and partition are not compatible")]
    NotCompatible,
    #[error("tree and partition are not refinement-compatible: {0}")]
    NotRCompatible(RefusalWitness),
    #[error("cluster {{{cluster}}} overlaps the blocks {{{first}}} and {{{second}}}")]
    OverlapViolation {
        cluster: String,
        first: String,
        second: String,
    },

    #[error("split system is not tree-like")]
    NotTreeLike,
    #[error("split system lacks the singleton split of `{0}`")]
    MissingSingletonSplits(String),
    #[error("subset must be non-empty")]
    EmptySubset,

    #[error("partition system is empty")]
    EmptySystem,
    #[error("search space of {count} binary refinements exceeds the budget of {budget}")]
    BudgetExceeded { count: BigUint, budget: u64 },
    #[error("color {0} does not induce a complete multipartite graph")]
    NotMonochromaticFitch(u32),
    #[error("instance too large for the brute-force oracle: {0}")]
    TooLarge(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Self {
        Error::Line {
            line,
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
