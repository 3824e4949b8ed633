use thiserror::Error;

/// Errors raised anywhere in the workbench.
///
/// `WindowExceeded` and `InsufficientTrust` are refusals: the computation was not attempted
/// because the configured degree window cannot certify it. Callers surface the `required` bound.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KlrError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not of finite type: {0}")]
    NotFiniteType(String),
    #[error("word {0:?} is not a reduced expression")]
    NotReduced(Vec<usize>),
    #[error("convexity violated: {0}")]
    NotConvex(String),
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("degree window exceeded: need degree {required}, window ends at {available}")]
    WindowExceeded { required: i32, available: i32 },
    #[error("insufficient trust degree for {what}: need {required}, have {available}")]
    InsufficientTrust { what: String, required: i32, available: i32 },
    #[error("module is infinite dimensional")]
    InfiniteDimensional,
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("falsification: {0}")]
    Falsified(String),
    #[error("io error: {0}")]
    Io(String),
}

impl KlrError {
    /// True for errors that mean "window too small" rather than "wrong".
    pub fn is_refusal(&self) -> bool {
        matches!(self, KlrError::WindowExceeded { .. } | KlrError::InsufficientTrust { .. })
    }
}

pub type Result<T, E = KlrError> = std::result::Result<T, E>;
