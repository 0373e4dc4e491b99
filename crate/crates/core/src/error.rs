use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex subset is empty")]
    EmptySubset,

    #[error("vertex {vertex} has degree 0; spectral operations need every degree >= 1")]
    ZeroDegree { vertex: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("n = {n} exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("eigensolver did not converge: {converged}/{wanted} pairs after {iterations} matrix-vector products (worst residual {worst_residual:.3e})")]
    NonConvergence {
        converged: usize,
        wanted: usize,
        iterations: usize,
        worst_residual: f64,
    },

    #[error("spectrum holds {have} pairs, {need} required")]
    InsufficientSpectrum { have: usize, need: usize },

    #[error("vertex set has zero volume")]
    ZeroVolume,

    #[error("cluster {cluster} is empty (a clustering trace shows the round that left it empty)")]
    EmptyCluster { cluster: usize },

    #[error("cluster has {size} vertices; internal conductance needs at least 2")]
    ClusterTooSmall { size: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of the numerical routines rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}
