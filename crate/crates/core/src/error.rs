use thiserror::Error;

/// Errors produced by the library.
///
/// The variants fall into three groups that the CLI maps onto exit codes:
/// malformed input ([`Error::Parse`], [`Error::Io`]), instances beyond a
/// configured computational cap (see [`Error::is_cap`]), and everything else,
/// which is a violated precondition or parameter.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid vertex set: {0}")]
    InvalidVertexSet(String),

    #[error("family `{family}` needs n >= {min}, got {n}")]
    FamilyTooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("digraph is not symmetric")]
    NotSymmetric,

    #[error("digraph is not semicomplete")]
    NotSemicomplete,

    #[error("digraph is not strong")]
    NotStrong,

    #[error("bridge {0}-{1} present")]
    BridgePresent(usize, usize),

    #[error("arc ({0},{1}) is not in the digraph")]
    ArcAbsent(usize, usize),

    #[error("k = {k} out of range 2..={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("isomorphism test limited to order {limit}, got {n}")]
    IsoLimit { n: usize, limit: usize },

    #[error("more than {cap} minimal candidate subgraphs")]
    CandidateCap { cap: usize },

    #[error("{arcs} arcs exceed the oracle threshold {threshold}")]
    OracleThreshold { arcs: usize, threshold: usize },

    #[error("instance too large for the exact solver ({0})")]
    TooLarge(String),

    #[error("no Hamiltonian decomposition of the complete digraph on {0} vertices exists")]
    NoDecomposition(usize),

    #[error("search limit exceeded: {0}")]
    SearchLimit(String),

    #[error("invalid cycle cover: {0}")]
    InvalidCover(String),

    #[error("gadget stage mismatch: expected {expected}, got {got}")]
    WrongStage {
        expected: &'static str,
        got: &'static str,
    },

    #[error("invalid terminals: {0}")]
    InvalidTerminals(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("derivation failed: {0}")]
    Derivation(String),

    #[error("constructed certificate failed verification: {0}")]
    Certificate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that signal "instance too big for the configured caps".
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::IsoLimit { .. }
                | Error::CandidateCap { .. }
                | Error::OracleThreshold { .. }
                | Error::TooLarge(_)
                | Error::SearchLimit(_)
        )
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
