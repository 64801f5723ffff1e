use thiserror::Error;

use crate::graph::CoverViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("color {color} out of range for {k} colors")]
    ColorOutOfRange { color: usize, k: usize },

    #[error("expected a 2-edge-coloring, found {0} colors")]
    NotTwoColored(usize),

    #[error("edge {u}-{v} has no color")]
    MissingEdge { u: usize, v: usize },

    #[error("invalid cycle cover: {0}")]
    InvalidCover(CoverViolation),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("invalid reload cost matrix: {0}")]
    InvalidReloadMatrix(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("order {n} exceeds the exhaustive search cap of {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("reload cost overflowed u64")]
    CostOverflow,
}
