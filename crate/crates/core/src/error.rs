use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("algebra must have at least one block")]
    EmptyBlocks,

    #[error("block sizes must be positive (block {index} has size 0)")]
    ZeroBlock { index: usize },

    #[error("shape mismatch: expected {expected}, got {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("classical adjacency matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("classical adjacency matrix has a loop at vertex {vertex}")]
    NotHollow { vertex: usize },

    #[error("classical adjacency entry ({row}, {col}) is not 0 or 1")]
    NotBinary { row: usize, col: usize },

    #[error("operator subspace is not closed under adjoint (residual {residual:e})")]
    NotSelfAdjoint { residual: f64 },

    #[error("operator subspace is not an M'-bimodule (residual {residual:e})")]
    NotBimodule { residual: f64 },

    #[error("operator subspace is not orthogonal to M' (residual {residual:e})")]
    NotIrreflexive { residual: f64 },

    #[error("superoperator is not a bimodule map: decomposition residual {residual:e}")]
    DecompositionResidualTooLarge { residual: f64 },

    #[error("bounds require an irreflexive quantum graph (residual {residual:e})")]
    GraphNotIrreflexive { residual: f64 },

    #[error("operator is not a quantum adjacency matrix: {axiom} residual {residual:e}")]
    NotQuantumAdjacency { axiom: String, residual: f64 },

    #[error("block partition {sizes:?} does not cover a matrix of size {size}")]
    BadPartition { sizes: Vec<usize>, size: usize },

    #[error("graph has {n} vertices; exact chromatic number is capped at {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("improper coloring: edge ({u}, {v}) has both endpoints colored {color}")]
    ImproperColoring { u: usize, v: usize, color: usize },

    #[error("coloring has {found} entries for a graph on {expected} vertices")]
    ColoringLength { expected: usize, found: usize },

    #[error("certificate construction failed verification (worst residual {residual:e})")]
    ConstructionFailed { residual: f64 },

    #[error("operation requires a classical context (all blocks of size 1)")]
    NotClassical,
}

impl Error {
    pub(crate) fn shape(expected: impl ToString, found: impl ToString) -> Self {
        Error::ShapeMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
