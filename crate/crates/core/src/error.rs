use alloc::string::String;

/// Errors raised by the computational kernels.
///
/// Check *failures* (an axiom that does not hold, a flag that is false) are
/// never errors; they are report content. Errors mean the request itself
/// could not be honoured.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("operation requires a field, got {0}")]
    NotAField(String),
    #[error("operation requires the integers, got {0}")]
    NotIntegers(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("degree {degree} outside the trusted range [{lo}, {hi}]")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },
    #[error("size guard: {what} needs {needed} columns, cap is {cap}")]
    SizeGuard {
        what: String,
        needed: usize,
        cap: usize,
    },
    #[error("budget exceeded while {what}: {counted} items seen, budget {budget}")]
    BudgetExceeded {
        what: String,
        counted: usize,
        budget: usize,
    },
    #[error("polynomial is not separable: gcd(f, f') = {0}")]
    NotSeparable(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("characteristic mismatch: {0}")]
    Characteristic(String),
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::Invalid(alloc::format!($($arg)*)) };
}
pub(crate) use invalid;

macro_rules! shape {
    ($($arg:tt)*) => { $crate::error::Error::Shape(alloc::format!($($arg)*)) };
}
pub(crate) use shape;
