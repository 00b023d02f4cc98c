use thiserror::Error;

use crate::geom::GeomError;
use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex sets differ: {0}")]
    MismatchedVertexSets(String),
    #[error("no collinearity-free slot for point {index} inside its cell")]
    NoFreeSlot { index: usize },
    #[error("{count} points exceed the refinement size parameter {n}")]
    TooManyPoints { count: usize, n: usize },
    #[error("point set is not in general position: {0:?} are collinear")]
    NotInGeneralPosition((usize, usize, usize)),
    #[error("expected {expected} points, got {got}")]
    CardinalityMismatch { expected: usize, got: usize },
    #[error("hull-edge invariant violated while splitting at point {point}")]
    HullInvariant { point: usize },
    #[error("shift budget exceeded at spine vertex {vertex}")]
    ShiftBudget { vertex: usize },
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("coordinates leave the 2^40 budget for n = {0}")]
    GridTooLarge(usize),
}
