use thiserror::Error;

/// Errors raised by the lattice, stability, wall and decomposition routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate wall: the denominator g(x*c1 - r*y1) vanishes for this pair")]
    DegenerateWall,
    #[error("zero rank: {0}")]
    ZeroRank(&'static str),
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("not in the upper half-plane: Im Z = {0} <= 0")]
    NotUpperHalfPlane(String),
    #[error("surface is not a K3 surface (requires K_S = 0 and chi(O_S) = 2)")]
    NotK3,
    #[error("wrong surface: {0}")]
    WrongSurface(String),
    #[error("condition (C) violated: {0}")]
    ConditionCViolated(String),
    #[error("search bounds exclude every candidate destabilizer")]
    EmptySearch,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}

impl Error {
    /// Name of the variant, used when rendering errors on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::DegenerateWall => "DegenerateWall",
            Error::ZeroRank(_) => "ZeroRank",
            Error::WrongShape(_) => "WrongShape",
            Error::NotUpperHalfPlane(_) => "NotUpperHalfPlane",
            Error::NotK3 => "NotK3",
            Error::WrongSurface(_) => "WrongSurface",
            Error::ConditionCViolated(_) => "ConditionCViolated",
            Error::EmptySearch => "EmptySearch",
            Error::OutOfRange(_) => "OutOfRange",
            Error::NoSolution(_) => "NoSolution",
            Error::Parse { .. } => "ParseError",
            Error::Validation(_) => "ValidationError",
        }
    }

    /// Process exit code: 2 for malformed or invalid input, 3 for degenerate mathematics.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Validation(_)
            | Error::InvalidInput(_)
            | Error::OutOfRange(_)
            | Error::WrongSurface(_)
            | Error::NotK3 => 2,
            _ => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
