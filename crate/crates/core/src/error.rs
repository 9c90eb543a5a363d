use thiserror::Error;

/// Crate-wide error type.
///
/// Every variant carries a stable machine-readable code (see [`Error::code`])
/// and an exit class used by the CLI: 3 for input validation, 4 for violated
/// mathematical preconditions, 5 for internal invariant breaches.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("out of bounds: {0}")]
    Bounds(String),
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("graph mismatch: {0}")]
    GraphMismatch(String),
    #[error("invalid link: {0}")]
    InvalidLink(String),
    #[error("curves intersect: {0}")]
    CurvesIntersect(String),
    #[error("degenerate projection: {0}")]
    DegenerateProjection(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("wall event rejected: {0}")]
    EventRejected(String),
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable error code, exposed in CLI payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidRing(_) => "invalid_ring",
            Error::RingMismatch(_) => "ring_mismatch",
            Error::Parse(_) => "parse_error",
            Error::Bounds(_) => "out_of_bounds",
            Error::InvalidEdge(_) => "invalid_edge",
            Error::GraphMismatch(_) => "graph_mismatch",
            Error::InvalidLink(_) => "invalid_link",
            Error::CurvesIntersect(_) => "curves_intersect",
            Error::DegenerateProjection(_) => "degenerate_projection",
            Error::InvalidScenario(_) => "invalid_scenario",
            Error::EventRejected(_) => "event_rejected",
            Error::InvariantBreach(_) => "invariant_breach",
            Error::InvalidInput(_) => "invalid_input",
        }
    }

    /// Process exit code class: 3 input validation, 4 mathematical
    /// precondition, 5 internal invariant breach.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidRing(_)
            | Error::Parse(_)
            | Error::InvalidEdge(_)
            | Error::InvalidLink(_)
            | Error::InvalidScenario(_)
            | Error::InvalidInput(_) => 3,
            Error::RingMismatch(_)
            | Error::Bounds(_)
            | Error::GraphMismatch(_)
            | Error::CurvesIntersect(_)
            | Error::DegenerateProjection(_)
            | Error::EventRejected(_) => 4,
            Error::InvariantBreach(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
