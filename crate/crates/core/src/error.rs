use thiserror::Error;

/// Errors raised by the algebra kernels.
///
/// Every variant carries a stable short code (see [`Error::code`]) that the
/// command-line front end prints and that tests can match on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("colon by zero ideal")]
    ColonByZero,

    #[error("infinite colength: ideal is not m-primary")]
    InfiniteColength,

    #[error("{0} is not m-primary")]
    NotMPrimary(String),

    #[error("box of {cells} cells exceeds the enumeration ceiling of {limit}")]
    BoxTooLarge { cells: u128, limit: u128 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{what} is not contained in {container}")]
    NotContained { what: String, container: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("polynomial regime not reached after {attempts} base shifts")]
    PolynomialRegimeNotReached { attempts: usize },

    #[error("internal error: non-integral coefficient {coefficient} for e_{index}")]
    NonIntegralCoefficient { index: String, coefficient: String },

    #[error("fit and finite-difference extraction disagree for e_{index}: {fit} vs {difference}")]
    ExtractionDisagreement {
        index: String,
        fit: i64,
        difference: i64,
    },

    #[error("requires ambient dimension {required}, got {found}")]
    UnsupportedDimension { required: usize, found: usize },

    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "E_DIMENSION",
            Error::ColonByZero => "E_COLON_ZERO",
            Error::InfiniteColength => "E_INFINITE_COLENGTH",
            Error::NotMPrimary(_) => "E_NOT_M_PRIMARY",
            Error::BoxTooLarge { .. } => "E_BOX_TOO_LARGE",
            Error::Overflow(_) => "E_OVERFLOW",
            Error::NotContained { .. } => "E_NOT_CONTAINED",
            Error::InvalidConfig(_) => "E_CONFIG",
            Error::PolynomialRegimeNotReached { .. } => "E_NO_POLYNOMIAL_REGIME",
            Error::NonIntegralCoefficient { .. } => "E_NON_INTEGRAL",
            Error::ExtractionDisagreement { .. } => "E_EXTRACTION_DISAGREEMENT",
            Error::UnsupportedDimension { .. } => "E_UNSUPPORTED_DIMENSION",
            Error::InvariantViolated(_) => "E_INVARIANT",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
