use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NonSquare { row: usize, len: usize, n: usize },

    #[error("negative distance {value} at ({i}, {j})")]
    NegativeEntry { i: usize, j: usize, value: f64 },

    #[error("non-finite distance at ({i}, {j})")]
    NonFiniteEntry { i: usize, j: usize },

    #[error("nonzero diagonal {value} at ({i}, {i})")]
    NonzeroDiagonal { i: usize, value: f64 },

    #[error("declared n = {declared} but matrix has {actual} rows")]
    SizeMismatch { declared: usize, actual: usize },

    #[error("instance needs at least {min} cities, got {n}")]
    TooFewCities { n: usize, min: usize },

    #[error("{what} supports at most {max} cities, got {n}")]
    TooManyCities {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("invalid range: lo = {lo}, hi = {hi}")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("off-diagonal distances are constant ({value}); min-max normalization is undefined")]
    ConstantMatrix { value: f64 },

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("qubit budget exceeded: {needed} qubits requested, limit is {limit}")]
    QubitBudget { needed: usize, limit: usize },

    #[error("qubit index error: {0}")]
    QubitIndex(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("subset budget exceeded: {count} subtour constraints requested, limit is {limit}")]
    SubsetBudget { count: usize, limit: usize },

    #[error("curve fit needs at least 3 distinct sizes, got {0}")]
    InsufficientSizes(usize),

    #[error("{0}")]
    EmptyInput(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
