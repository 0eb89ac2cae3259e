use thiserror::Error;

/// Which matrix of a generator/parity-check pair an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Generator,
    ParityCheck,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Generator => f.write_str("G"),
            Side::ParityCheck => f.write_str("H"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("delay undefined for zero")]
    DelayOfZero,
    #[error("not divisible: D^{required} does not divide a polynomial with delay {available}")]
    NotDivisible { required: u32, available: u32 },
    #[error("column delay undefined: column {0} is all-zero")]
    ZeroColumn(usize),
    #[error("row delay undefined: row {0} is all-zero")]
    ZeroRow(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("GH relation does not hold: {0}")]
    NotGhPair(String),
    #[error("GH relation broken after transformation")]
    GhBroken,
    #[error("C_SR violated: column {first} gives {first_value}, column {column} gives {value}")]
    CsrViolated {
        first: usize,
        first_value: i64,
        column: usize,
        value: i64,
    },
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("illegal division in {side}, column {column}: requires delay {required}, available {available}")]
    IllegalDivision {
        side: Side,
        column: usize,
        required: u32,
        available: u32,
    },
    #[error("horizon too short to terminate: N = {horizon}, memory = {memory}")]
    HorizonTooShort { horizon: usize, memory: usize },
    #[error("no admissible path")]
    NoAdmissiblePath,
    #[error("enumeration cap exceeded: {free_bits} free bits > {cap}")]
    CapExceeded { free_bits: usize, cap: usize },
    #[error("state space too large: {0} bits")]
    StateSpaceTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
