use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// `Falsified` is special: it means a mathematical claim that is expected to
/// hold was contradicted by a computation, and it carries the counterexample.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownEndpoint { edge: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge `{edge}` has non-positive length {length}")]
    NonPositiveLength { edge: String, length: String },
    #[error("edge `{edge}` has non-integer length {length}")]
    NonIntegerLength { edge: String, length: String },
    #[error("malformed length `{0}`")]
    MalformedLength(String),
    #[error("edge connectivity is undefined on a single vertex")]
    SingleVertex,
    #[error("{what} limit exceeded: {count} > {cap}")]
    CapExceeded {
        what: &'static str,
        count: u128,
        cap: u128,
    },
    #[error("divisor has {found} coefficients, graph has {expected} vertices")]
    DivisorMismatch { expected: usize, found: usize },
    #[error("vertex `{vertex}` has coefficient {value} < 0 away from the base vertex")]
    NegativeAwayFromBase { vertex: String, value: i64 },
    #[error("illegal firing set: {0}")]
    IllegalFiringSet(&'static str),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is acyclic")]
    Acyclic,
    #[error("graph is not a tree")]
    NotTree,
    #[error("vertex set is not a colour class of the graph")]
    NotColorClass,
    #[error("probe set is not certified rank-determining")]
    ProbeSetNotCertified,
    #[error("graph is not the catalog Heawood graph")]
    NotHeawood,
    #[error("{0}")]
    NoProgress(String),
    #[error("internal contradiction: {0}")]
    Contradiction(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("claim falsified: {claim}")]
    Falsified {
        claim: String,
        counterexample: Box<serde_json::Value>,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn falsified(claim: impl Into<String>, counterexample: serde_json::Value) -> Self {
        Error::Falsified {
            claim: claim.into(),
            counterexample: Box::new(counterexample),
        }
    }

    /// True when the error reports a contradicted mathematical claim rather
    /// than bad input or an exhausted resource.
    pub fn is_falsification(&self) -> bool {
        matches!(self, Error::Falsified { .. } | Error::Contradiction(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
