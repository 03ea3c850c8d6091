use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: negative edge weight {weight}")]
    NegativeWeight { line: usize, weight: f64 },

    #[error("GML: {0}")]
    Gml(String),

    #[error("edge references unknown node id {id}")]
    DanglingEdge { id: String },

    #[error("duplicate node label `{0}`")]
    DuplicateLabel(String),

    #[error("edge endpoint {index} out of range for {node_count} nodes")]
    EndpointOutOfRange { index: usize, node_count: usize },

    #[error("graph has no edges; normalization is undefined")]
    NoEdges,

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("adjacency matrix is zero; dominant eigenvector is undefined")]
    DegenerateSpectrum,

    #[error(
        "I - alpha*A is singular or alpha = {alpha} lies outside the convergence radius 1/lambda_1"
    )]
    AlphaBeyondRadius { alpha: f64 },

    #[error("node `{label}` has zero out-degree; random-walk transition is undefined")]
    ZeroOutDegree { label: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no pair of labeled nodes shares a ground-truth class")]
    NoSameClassPair,

    #[error("score for node `{label}` is not finite")]
    NonFiniteScore { label: String },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("eigensolver failed to converge on a {size}x{size} block")]
    EigenNoConvergence { size: usize },

    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),

    #[error("dataset `{name}` is not installed: {path} not found")]
    DatasetMissing { name: String, path: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerical routines, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DegenerateSpectrum
                | Error::AlphaBeyondRadius { .. }
                | Error::EigenNoConvergence { .. }
                | Error::NonFiniteScore { .. }
        )
    }
}
