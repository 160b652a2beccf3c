use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} vertices exceeds the supported maximum of 64")]
    TooManyVertices(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("explicit pattern has {got} vertices; the embedding counter supports at most {max}")]
    PatternTooLarge { got: usize, max: usize },

    #[error("kcol parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("budget exhausted after {nodes} node visits")]
    BudgetExhausted { nodes: u64 },

    #[error("two vertex-disjoint edges between S and T: {first:?} and {second:?}")]
    TwoMatching { first: (usize, usize), second: (usize, usize) },

    #[error("decision tree exhausted: {0}")]
    DecisionTreeExhausted(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }

    pub(crate) fn pre(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    pub(crate) fn hyp(message: impl Into<String>) -> Self {
        Error::Hypothesis(message.into())
    }
}
