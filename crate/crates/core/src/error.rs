use thiserror::Error;

use crate::graph::Graph;

pub type Result<T> = std::result::Result<T, Error>;

/// A piece that the decomposition could not classify, in the ids of the
/// graph that was decomposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub graph: Graph,
    pub vertex_map: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unsupported size: n = {n} exceeds {max}")]
    UnsupportedSize { n: usize, max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit: {what} is {size}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("graph is outside the {family} family (witness piece on {} vertices)", .witness.graph.n())]
    NotInFamily {
        family: crate::decompose::Family,
        witness: Box<Witness>,
    },

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
