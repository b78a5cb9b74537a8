use alloc::string::String;

/// Errors produced by the core crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph has {n} vertices, at most {max} supported")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: &'static str },

    #[error("edge list parse error: {0}")]
    EdgeList(String),

    #[error("operation supports at most {max} vertices, got {n}")]
    UnsupportedSize { n: usize, max: usize },

    #[error("invalid split pattern: {0}")]
    InvalidSplit(&'static str),

    #[error("invalid clique pair: {0}")]
    InvalidPair(&'static str),

    #[error("invalid part vector: {0}")]
    InvalidPartVector(String),

    #[error("type graph is not complete multipartite")]
    NotCompleteMultipartite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("gadget {index} has {vertices} vertices, larger than the {m}-vertex pattern")]
    GadgetTooLarge { index: usize, vertices: usize, m: usize },

    #[error("gadget {index} is not registered as {k}-Turán-good")]
    UnregisteredGadget { index: usize, k: usize },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("certificate does not verify")]
    UnverifiedCertificate,

    #[error("certificate bound is not an integer")]
    NonIntegralBound,

    #[error("base graph is not known to be {k}-Turán-good")]
    NotKnownGood { k: usize },

    #[error("attachment set is not a clique")]
    NotAClique,

    #[error("construction contains K_{k}")]
    ContainsForbiddenClique { k: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
