use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("result degree {degree} exceeds the composition cap {cap}")]
    CapExceeded { degree: usize, cap: usize },

    #[error("degenerate map: {0}")]
    DegenerateMap(String),

    #[error("the map is the identity, every point is fixed")]
    IdentityMap,

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("root finder did not converge after {iterations} iterations ({unconverged} roots pending)")]
    NoConvergence { iterations: usize, unconverged: usize },

    #[error("{0} is not a fixed point")]
    NotAFixedPoint(String),

    #[error("multiplier {0} is within tolerance of 1, the closed-form index is undefined")]
    MultiplierOne(String),

    #[error("contour around {center} of radius {radius} contains another singularity")]
    ContourContaminated { center: String, radius: f64 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("ambiguous cluster near {0}: close to a lower-period point with a different multiplier")]
    ClusterAmbiguity(String),

    #[error("fixed points {0} and {1} coincide")]
    DuplicateFixedPoint(String, String),

    #[error("scale factor k must be nonzero")]
    ZeroK,

    #[error("scale factor M must be nonzero")]
    ZeroM,

    #[error("non-real input: {0}")]
    NonRealInput(String),

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("invalid k: {0}")]
    InvalidK(String),

    #[error("invalid alpha: {0}")]
    InvalidAlpha(String),

    #[error("points {0} and {1} coincide")]
    DuplicatePoints(String, String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o failure: {0}")]
    IoFailure(String),
}

impl Error {
    /// Stable variant name, used in machine-readable error output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::CapExceeded { .. } => "CapExceeded",
            Error::DegenerateMap(_) => "DegenerateMap",
            Error::IdentityMap => "IdentityMap",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NotAFixedPoint(_) => "NotAFixedPoint",
            Error::MultiplierOne(_) => "MultiplierOne",
            Error::ContourContaminated { .. } => "ContourContaminated",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::PreconditionUnmet(_) => "PreconditionUnmet",
            Error::ClusterAmbiguity(_) => "ClusterAmbiguity",
            Error::DuplicateFixedPoint(..) => "DuplicateFixedPoint",
            Error::ZeroK => "ZeroK",
            Error::ZeroM => "ZeroM",
            Error::NonRealInput(_) => "NonRealInput",
            Error::DuplicatePoint(_) => "DuplicatePoint",
            Error::InvalidK(_) => "InvalidK",
            Error::InvalidAlpha(_) => "InvalidAlpha",
            Error::DuplicatePoints(..) => "DuplicatePoints",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::IoFailure(_) => "IoFailure",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::IoFailure(e.to_string())
    }
}
