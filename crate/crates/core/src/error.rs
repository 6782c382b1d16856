use alloc::boxed::Box;
use alloc::string::String;

use crate::cutloop::CutLoopReport;
use crate::graph::Element;
use crate::mp::MpError;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid element {element:?} for a graph with {n} vertices and {m} edges")]
    InvalidElement {
        element: Element,
        n: usize,
        m: usize,
    },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown graph name `{0}`")]
    UnknownGraph(String),
    #[error("{what} is limited to n+m <= {cap}, got {size}")]
    SizeLimit {
        what: &'static str,
        cap: usize,
        size: usize,
    },
    #[error("size mismatch: expected a vector of length {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("column generation stopped after {iterations} iterations (best bound {bound})")]
    IterationLimit { iterations: usize, bound: f64 },
    #[error("cut loop failed after {} rounds: {source}", partial.rounds)]
    CutLoop {
        #[source]
        source: Box<Error>,
        partial: Box<CutLoopReport>,
    },
    #[error(transparent)]
    Solver(#[from] MpError),
}
