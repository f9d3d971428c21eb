use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("graph is not connected")]
    NotConnected,

    #[error("node is not part of the block tree")]
    UnknownNode,

    #[error("block is not biconnected")]
    NotBiconnected,

    #[error("outer edges do not form a spanning cycle")]
    NotOuterplanarBlock,

    #[error("graph with {n} vertices exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("graph class is not supported")]
    Unsupported,

    #[error("free product of an empty list")]
    EmptyList,

    #[error("outer group of a free wreath product has no degree: {0}")]
    BadOuter(String),

    #[error("orbit structure does not match the base group: {0}")]
    OrbitMismatch(String),

    #[error("automorphism orbits {aut:?} are strictly finer than WL classes {wl:?}")]
    OrbitGap {
        aut: Vec<Vec<usize>>,
        wl: Vec<Vec<usize>>,
    },

    #[error("graph class {0} is refused without --force")]
    ClassRefused(String),

    #[error("block on {0} vertices is neither complete nor outerplanar")]
    UnsupportedBlock(usize),

    #[error("invalid expression: {0}")]
    InvalidExpr(String),
}

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }
}
