use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("curve needs at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("vertex {index} has dimension {got}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("consecutive vertices {0} and {1} coincide")]
    DegenerateEdge(usize, usize),
    #[error("arclength parameter {s} outside [0, {len}] on an open curve")]
    ParameterOutOfRange { s: f64, len: f64 },
    #[error("turning angle undefined at endpoint {0} of an open curve")]
    EndpointVertex(usize),
    #[error("vertex index {0} out of range")]
    VertexIndex(usize),
    #[error("points of a quadrilateral must be pairwise distinct")]
    DegenerateQuad,
    #[error("diagonal/(2 side) ratio {0} exceeds 1: not a square-like quadrilateral")]
    NotRealizable(f64),
    #[error("theta {0} outside (0, pi/4]")]
    ThetaOutOfRange(f64),
    #[error("cannot fillet cusp at vertex {0}")]
    Cusp(usize),
    #[error("parameters are not cyclically ordered")]
    NotCyclicallyOrdered,
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
