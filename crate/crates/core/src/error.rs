use thiserror::Error;

/// Errors raised by constructors, spectrum evaluators and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("order must be positive, got {0}")]
    NonPositiveOrder(i64),
    #[error("K = {k} is not coprime to N = {n}")]
    NotCoprime { n: i64, k: i64 },
    #[error("root of unity is degenerate (q = 1), quantum integers are undefined")]
    DegenerateRoot,
    #[error("quantum integer has imaginary residue {0:e}")]
    NonRealResult(f64),
    #[error("unsupported quantum-integer denominator {0} (allowed: 1, 2, 4)")]
    UnsupportedDenominator(i64),
    #[error("integer metric ({a},{b},{c},{d}) has zero determinant")]
    DegenerateMetric { a: i64, b: i64, c: i64, d: i64 },
    #[error("deformation parameter is degenerate: {0}")]
    DegenerateDeformation(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension {0} must be even (divisible by 4 for the Z2 x Z2 deck group)")]
    OddDimension(usize),
    #[error("monomial exponents are not integral: {0}")]
    ParityMismatch(String),
    #[error("spin structure {requested:?} differs from the canonical {canonical:?}")]
    WrongSpinStructure {
        requested: (u8, u8),
        canonical: (u8, u8),
    },
    #[error("cover requires a root of order 4N' = {expected}, got {actual}")]
    OrderMismatch { expected: u64, actual: u64 },
    #[error("Dirac operator leaks out of sector {chi:?}: off-block norm {norm:e}")]
    SectorLeak { chi: (u8, u8), norm: f64 },
    #[error("sector {chi:?} spectrum disagrees with the closed form: gap {gap:e}")]
    ConjectureViolation { chi: (u8, u8), gap: f64 },
    #[error("matrix is not Hermitian: |M - M*| = {0:e}")]
    NotHermitian(f64),
    #[error("invalid torus: {0}")]
    InvalidTorus(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag, used in the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPositiveOrder(_) => "NonPositiveOrder",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::DegenerateRoot => "DegenerateRoot",
            Error::NonRealResult(_) => "NonRealResult",
            Error::UnsupportedDenominator(_) => "UnsupportedDenominator",
            Error::DegenerateMetric { .. } => "DegenerateMetric",
            Error::DegenerateDeformation(_) => "DegenerateDeformation",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::OddDimension(_) => "OddDimension",
            Error::ParityMismatch(_) => "ParityMismatch",
            Error::WrongSpinStructure { .. } => "WrongSpinStructure",
            Error::OrderMismatch { .. } => "OrderMismatch",
            Error::SectorLeak { .. } => "SectorLeak",
            Error::ConjectureViolation { .. } => "ConjectureViolation",
            Error::NotHermitian(_) => "NotHermitian",
            Error::InvalidTorus(_) => "InvalidTorus",
            Error::Config(_) => "Config",
            Error::Io(_) => "Io",
            Error::Csv(_) => "Csv",
            Error::Json(_) => "Json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
