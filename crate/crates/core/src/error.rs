use thiserror::Error;

/// Everything that can go wrong inside the lab.
///
/// Each variant maps to a stable reason code (see [`Error::code`]) that the
/// command line front end reports verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension limit: ambient dimension {dim} exceeds limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },
    #[error("not a polytope: input is unbounded")]
    NotPolytope,
    #[error("improper result: {0}")]
    Improper(String),
    #[error("set is empty or has empty interior")]
    ThinSet,
    #[error("point outside domain")]
    OutsideDomain,
    #[error("cone violation: {0}")]
    ConeViolation(String),
    #[error("A not interior to domain")]
    NotInteriorToDomain,
    #[error("outside maximal cone: {0}")]
    OutsideMaximalCone(String),
    #[error("duplicate nodes")]
    DuplicateNodes,
    #[error("support escapes region: {0}")]
    SupportEscapes(String),
    #[error("unknown catalog shape: {0}")]
    UnknownShape(String),
    #[error("not convex: {0}")]
    NotConvex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Machine readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyInput => "empty_input",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DimensionLimit { .. } => "dimension_limit",
            Error::NotPolytope => "not_a_polytope",
            Error::Improper(_) => "improper_result",
            Error::ThinSet => "thin_set",
            Error::OutsideDomain => "outside_domain",
            Error::ConeViolation(_) => "cone_violation",
            Error::NotInteriorToDomain => "a_not_interior_to_domain",
            Error::OutsideMaximalCone(_) => "outside_maximal_cone",
            Error::DuplicateNodes => "duplicate_nodes",
            Error::SupportEscapes(_) => "support_escapes",
            Error::UnknownShape(_) => "unknown_shape",
            Error::NotConvex(_) => "not_convex",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse(_) => "malformed_input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
