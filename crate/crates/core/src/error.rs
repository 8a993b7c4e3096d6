use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generators span a cone containing a line")]
    NotStronglyConvex,
    #[error("complexes have different supports")]
    SupportMismatch,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("cone is not a member of the complex")]
    ConeNotInComplex,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {0} not found")]
    EdgeNotFound(usize),
    #[error("linear system has no solution with positive lengths in the assigned cones")]
    Infeasible,
    #[error("rays with positive contact span no cone of the fan")]
    NoSuchStratum,
    #[error("flattening did not stabilise within {0} iterations")]
    IterationLimit(usize),
    #[error("search space exceeds configured bounds: {0}")]
    TruncationTooLarge(String),
    #[error("edge {0} has zero slope")]
    ContractedEdge(usize),
    #[error("contact data disagree across edge {0}")]
    GluingMismatch(usize),
    #[error("outside supported bounds: {0}")]
    BoundsExceeded(String),
    #[error("vertex {0} is not trivalent with nonzero slopes")]
    NotTrivalent(usize),
    #[error("point configuration is not generic: {0}")]
    NonGenericConfiguration(String),
    #[error("object cannot be plotted: {0}")]
    Unplottable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
