use thiserror::Error;

/// Errors produced by the library.
///
/// Variants are grouped by the failing subsystem so that callers (in
/// particular the CLI) can tag messages with a category.
#[derive(Error, Debug)]
pub enum Error {
    #[error("domain: argument {name} = {value} outside {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("parameter: {0}")]
    Parameter(String),

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("unsupported dimension d = {got}: {reason}")]
    UnsupportedDimension { got: u32, reason: &'static str },

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error(
        "precision violation: rule has verified precision {got} but level requires {required}"
    )]
    PrecisionViolation { got: i64, required: i64 },

    #[error("point set parse error at line {line}: {reason}")]
    PointSetParse { line: usize, reason: String },

    #[error("point at line {line} has norm {norm} (must be within {tol} of 1)")]
    NonUnitPoint { line: usize, norm: f64, tol: f64 },

    #[error("non-positive weight {weight} at line {line}")]
    NonPositiveWeight { line: usize, weight: f64 },

    #[error("numerical consistency failure: {0}")]
    NumericalConsistency(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short category tag used by the CLI when reporting failures.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Parameter(_) => "parameter",
            Error::Overflow(_) => "overflow",
            Error::UnsupportedDimension { .. } => "dimension",
            Error::IndexOutOfRange { .. } | Error::SizeMismatch(_) => "shape",
            Error::PrecisionViolation { .. } => "precision",
            Error::PointSetParse { .. }
            | Error::NonUnitPoint { .. }
            | Error::NonPositiveWeight { .. } => "pointset",
            Error::NumericalConsistency(_) => "numerics",
            Error::DegenerateFit(_) => "fit",
            Error::ResourceLimit(_) => "resource",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
