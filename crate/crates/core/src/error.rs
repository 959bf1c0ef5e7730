use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The oracle would have to enumerate more than `2^limit` matrices.
    #[error("oracle size guard exceeded: {k}x{n} has {cells} cells, limit is {limit}")]
    SizeLimitExceeded {
        k: usize,
        n: usize,
        cells: usize,
        limit: usize,
    },
    #[error("closed form produced a non-integer value {value} at ({k}, {n})")]
    NonIntegerResult { k: usize, n: usize, value: String },
    #[error("series coefficient {value} scales to a non-integer count")]
    NonIntegerCoefficient { value: String },
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("divisor series has a zero constant term")]
    ZeroConstantDivisor,
    #[error("coefficient index ({k}, {n}) lies outside truncation ({kmax}, {nmax})")]
    OutsideTruncation {
        k: usize,
        n: usize,
        kmax: usize,
        nmax: usize,
    },
    #[error("unknown pattern symbol `{0}`")]
    UnknownSymbol(String),
    #[error("avoidance set must be nonempty")]
    EmptyAlpha,
    #[error("no generating function is available for {0}")]
    NoGeneratingFunction(String),
    #[error("{0}")]
    InvalidArgument(String),
}
