use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts sum to {actual}, expected {expected}")]
    SumMismatch { expected: i64, actual: i64 },

    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<i64>),

    #[error("both lambda and mu are empty")]
    EmptyShape,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("duplicate entry {0}")]
    DuplicateEntry(usize),

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),

    #[error("malformed tabloid: {0}")]
    MalformedTabloid(String),

    #[error("basis of dimension {dim} exceeds the guard of {limit}")]
    BasisTooLarge { dim: String, limit: u64 },

    #[error("{k} blocks exceed the supported maximum of {max}")]
    TooManyBlocks { k: usize, max: usize },

    #[error("decomposition would need {count} classes, more than the guard of {limit}")]
    TooManyClasses { count: String, limit: u64 },

    #[error("block set {set} is not contained in 1..={k}")]
    BlockOutOfRange { set: String, k: usize },

    #[error("{count} is not divisible by the orbit size {orbit}")]
    InexactDivision { count: String, orbit: String },

    #[error("orbit of size {actual} where {expected} was expected")]
    OrbitSizeMismatch { expected: usize, actual: usize },

    #[error("formal sums over different contexts: (p={p1}, k={k1}) vs (p={p2}, k={k2})")]
    MixedContext { p1: u64, k1: usize, p2: u64, k2: usize },

    #[error("core dimension series is identically zero")]
    ZeroCore,

    #[error("need at least two consecutive nonzero terms, got {0}")]
    SeriesTooShort(usize),

    #[error("signature does not describe n={n}, p={p}: {reason}")]
    InconsistentSignature { n: usize, p: u64, reason: String },

    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
}

impl Error {
    /// Whether the error comes from a size guard rather than bad input or a bug.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::BasisTooLarge { .. } | Error::TooManyBlocks { .. } | Error::TooManyClasses { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
