use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible series: {0}")]
    IncompatibleSeries(String),

    #[error("series has a term of x-degree 0; exp needs a zero constant term")]
    NonzeroConstantTerm,

    #[error("log needs constant term 1 and no other x-degree-0 terms")]
    BadConstantTerm,

    #[error("wrong z-part kind: expected {expected}, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("inconsistent table at n={n}, k={k:?}: {reason}")]
    InconsistentTable { n: u32, k: Vec<u32>, reason: String },

    #[error("invalid table entry: {0}")]
    InvalidEntry(String),

    #[error("order {n} exceeds the oracle cap {cap}")]
    OracleCap { n: u32, cap: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid rational {0:?}")]
    BadRational(String),
}
