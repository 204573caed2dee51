use thiserror::Error;

use crate::ratmat::RatMatrix;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph would have {requested} vertices, budget is {budget}")]
    VertexBudget { requested: u128, budget: usize },

    #[error("vertex {vertex} out of range for a graph on {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },

    #[error("code must contain at least one vertex")]
    EmptyCode,

    #[error("vertex {vertex} cannot be reached from the code")]
    Unreachable { vertex: usize },

    #[error("distance {w} exceeds eccentricity {eccentricity} of vertex {vertex}")]
    DistanceOutOfRange {
        vertex: usize,
        w: usize,
        eccentricity: usize,
    },

    #[error("graph is not regular (vertex {vertex} has degree {degree}, expected {expected})")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error(
        "graph is not distance-regular: pairs ({}, {}) and ({}, {}) at distance {distance} disagree",
        first.0, first.1, second.0, second.1
    )]
    NotDistanceRegular {
        distance: usize,
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("color {color} has no vertices")]
    EmptyColorClass { color: usize },

    #[error(
        "coloring is not equitable: vertices {first} and {second} share color {color} but see {color_seen} neighbors differently"
    )]
    NotEquitable {
        first: usize,
        second: usize,
        color: usize,
        color_seen: usize,
    },

    #[error("quotient matrix is not tridiagonal at ({row}, {col})")]
    NotTridiagonal { row: usize, col: usize },

    #[error("A f = f S does not hold; first nonzero residual row is {row}")]
    NotPerfect { row: usize, residual: RatMatrix },

    #[error("matrix entry ({row}, {col}) must be {expected}")]
    PatternViolation {
        row: usize,
        col: usize,
        expected: &'static str,
    },

    #[error("internal identity failed: {0}")]
    Assertion(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
