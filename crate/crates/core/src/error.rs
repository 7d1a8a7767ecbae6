use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. The CLI maps the variants onto exit codes:
/// precondition-class errors exit 2, budget exhaustion exits 3, anything
/// else exits 1.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-visible precondition was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An enumeration would exceed the configured budget. A computation
    /// interrupted by this error has produced no partial truth value.
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Mixed operands from different prime fields.
    #[error("prime field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u64, right: u64 },

    /// Remainder or modular power by the zero polynomial.
    #[error("division by the zero polynomial")]
    ZeroModulus,

    /// The requested operation is not defined for this ring.
    #[error("unsupported for this ring: {0}")]
    Unsupported(String),

    /// The Gram matrix of the requested basis is numerically singular.
    #[error("singular basis: {0}")]
    SingularBasis(String),

    /// Malformed input text or file.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::BudgetExceeded(msg.into())
    }
}
