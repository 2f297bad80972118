use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency rows are not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),

    #[error("malformed graph6 string: {0}")]
    Graph6(String),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,

    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a Salem graph")]
    NotSalem,
    #[error("graph does not satisfy the requirement: {0}")]
    Precondition(&'static str),

    #[error("invalid GCP size: GCP({n}, {m})")]
    InvalidGcp { n: usize, m: usize },
    #[error("root graph has {vertices} vertices but {given} multiplicities were given")]
    LengthMismatch { vertices: usize, given: usize },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parameters for {family} out of bounds: {reason}")]
    ParameterBounds { family: String, reason: String },
    #[error("invalid bipartite component: {0}")]
    InvalidComponent(String),
    #[error("catalog: {0}")]
    Catalog(String),

    #[error("roots do not represent a simple graph: inner product {ip} between {i} and {j}")]
    NotSimpleGram { i: usize, j: usize, ip: i32 },
    #[error("predicate is not hereditary: {0}")]
    NotHereditary(String),
}
