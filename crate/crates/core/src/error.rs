use thiserror::Error;

/// Every failure the library can report. Variants name the invariant or
/// precondition that did not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dart arrays have mismatched or odd lengths ({0})")]
    BadLength(String),
    #[error("alpha is not a fixed-point-free involution at dart {0}")]
    NotInvolution(usize),
    #[error("{which} is not a permutation (dart {dart})")]
    NotPermutation { which: &'static str, dart: usize },
    #[error("map is disconnected")]
    Disconnected,
    #[error("map has positive genus {0}")]
    PositiveGenus(usize),
    #[error("root dart {0} out of range")]
    BadRoot(usize),

    #[error("pole rule violated at vertex {0}")]
    SourceSinkViolation(usize),
    #[error("vertex rule violated at vertex {0}")]
    VertexRuleViolation(usize),
    #[error("face rule violated at face {0}")]
    FaceRuleViolation(usize),
    #[error("right outer boundary is not a directed path from S to N")]
    RightBoundaryViolation,
    #[error("orientation has a directed cycle")]
    DirectedCycle,
    #[error("orientation has {got} entries, expected {expected}")]
    OrientationLength { got: usize, expected: usize },

    #[error("vertex {0} is not an internal vertex")]
    NotInternalVertex(usize),
    #[error("edge {0} is not boundary-reaching")]
    NotBoundaryReaching(usize),
    #[error("edge {0} is not right-internal")]
    NotRightInternal(usize),
    #[error("map is not a quasi-triangulation")]
    NotQuasiTriangulation,
    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("external face degree {0} is smaller than 3")]
    ExternalDegreeTooSmall(usize),
    #[error("map is not 2-connected")]
    NotTwoConnected,

    #[error("orientation is not a 3-orientation: {0}")]
    NotThreeOrientation(String),
    #[error("straight path got stuck at vertex {0}")]
    StraightPathStuck(usize),
    #[error("internal face {0} does not have right length 2")]
    RightLengthNotTwo(usize),
    #[error("map is not simple")]
    NotSimple,

    #[error("edge bound {got} exceeds the configured maximum {max}")]
    BoundExceeded { got: usize, max: usize },
    #[error("inconsistent class parameters: {0}")]
    InconsistentParameters(String),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("bad marking: {0}")]
    BadMarking(String),
    #[error("parameter out of domain: {0}")]
    DomainError(String),
    #[error("rejection loop exceeded {0} attempts")]
    RejectionCap(u64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
