use std::path::PathBuf;

use thiserror::Error;

/// Group axiom that an ingested table violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Closure,
    Identity,
    Inverse,
    Associativity,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::Closure => "closure",
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverse",
            Axiom::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} exceeds cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("generators act on different degrees ({expected} vs {found})")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("not a group: {axiom} fails at {witness:?}")]
    NotAGroup { axiom: Axiom, witness: Vec<usize> },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("{0} is not a prime dividing the group order")]
    NoSuchPrime(u64),

    #[error("{}:{line}: {msg}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("bad group descriptor `{0}`")]
    BadSpec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
