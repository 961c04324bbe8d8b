use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("residue {value} is out of range for modulus {p}")]
    ResidueOutOfRange { value: u64, p: u64 },

    #[error("multiplicity of {element} is {mult}, which exceeds the cap p = {p}")]
    MultiplicityCap { element: u64, mult: u64, p: u64 },

    #[error("multiplicity of {element} must be at least 1")]
    ZeroMultiplicity { element: u64 },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("operation requires a nonempty {0}")]
    Empty(&'static str),

    #[error("dilation by zero collapses the sequence")]
    ZeroDilation,

    #[error("{what} = {value} outside the admissible range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("budget exceeded for {what}: needs {required} items, limit is {limit}")]
    BudgetExceeded {
        what: String,
        required: String,
        limit: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed witness: {0}")]
    MalformedWitness(String),
}
