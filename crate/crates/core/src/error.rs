use std::fmt;

use thiserror::Error;

/// Which law of an equivalence relation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceLaw {
    Reflexive,
    Symmetric,
    Transitive,
}

impl fmt::Display for EquivalenceLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivalenceLaw::Reflexive => "reflexivity",
            EquivalenceLaw::Symmetric => "symmetry",
            EquivalenceLaw::Transitive => "transitivity",
        })
    }
}

/// Errors raised by the kernel. Validation failures carry the smallest
/// witness that exhibits the problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}` in domain")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("relation has {rows}x{cols} cells, expected {expected_rows}x{expected_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("not an equivalence: {law} fails at ({})", witness.join(", "))]
    NotEquivalence {
        law: EquivalenceLaw,
        witness: Vec<String>,
    },

    #[error("map is not total: `{0}` has no image")]
    NotTotal(String),

    #[error("map is not injective: `{first}` and `{second}` both go to `{image}`")]
    NotInjective {
        first: String,
        second: String,
        image: String,
    },

    #[error("construction did not produce a bijection: {0}")]
    NotBijective(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("non-canonical notation: {0}")]
    NonCanonical(String),

    #[error("finite fragment only: `{0}` is infinite")]
    InfiniteNotation(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("stray element `{0}` is not in the carrier")]
    StrayElement(String),

    #[error("invalid well-order: {0}")]
    InvalidOrder(String),

    #[error("choice violation: `{chosen}` already lies in {{{}}}", subset.join(","))]
    ChoiceViolation { subset: Vec<String>, chosen: String },

    #[error("choice function undefined on {{{}}}", subset.join(","))]
    ChoiceUndefined { subset: Vec<String> },

    #[error("powerset of a set with {members} members exceeds the bound of {bound}")]
    PowersetBound { members: u64, bound: u32 },

    #[error("code too large: a member index of {0} bits cannot be materialized")]
    CodeTooLarge(u64),

    #[error("the empty set has no foundation witness")]
    EmptySet,

    #[error("not well-founded: cycle {}", .0.join(" -> "))]
    NotWellFounded(Vec<String>),

    #[error("`{level}` is {kind}; ranks of elements cannot be limits and the predecessor level is undefined")]
    RankLevel { level: String, kind: &'static str },

    #[error("invalid model: {0}")]
    Model(String),

    #[error("invalid json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
