use thiserror::Error;

/// Errors raised by the exact-arithmetic and enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is undefined for zero input")]
    ZeroInput(&'static str),

    #[error("cannot parse {kind} from {input:?}")]
    Parse { kind: &'static str, input: String },

    #[error("negative argument {0} (expected s >= 0)")]
    NegativeArgument(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("coefficient tables have mismatched lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("norm heuristic does not apply: r2 is divisible by both primes above {0}")]
    InvalidNormHeuristic(u64),

    #[error("model set is singular: point {point} has its internal image on the window boundary")]
    Singular { point: String },

    #[error("no eligible centres: {0}")]
    NoCentres(String),

    #[error("zeta function has a non-integral coefficient at order {0}")]
    InvalidZeta(usize),

    #[error("orbit data invalid at n = {0}: cycle count is not a non-negative integer")]
    InvalidOrbitData(usize),

    #[error("unknown name {0:?}")]
    UnknownName(String),

    #[error("internal arithmetic error: {0}")]
    Internal(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
