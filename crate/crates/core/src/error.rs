use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("malformed graph6 input: {0}")]
    Graph6(String),
    #[error("malformed edge list: {0}")]
    EdgeList(String),
    #[error("graph on {n} vertices exceeds the cap of {cap} for {what}")]
    SizeCap { what: &'static str, n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a bipartite graph: {0}")]
    NotBipartite(String),
    #[error("not a rooted tree: {0}")]
    NotRootedTree(String),
    #[error("not a matching: {0}")]
    NotMatching(String),
    #[error("empty vertex set")]
    EmptySet,
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("ledger error: {0}")]
    Ledger(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
