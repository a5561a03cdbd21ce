use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero division: 0 has no inverse modulo {0}")]
    ZeroDivision(u32),

    #[error("modulus {0} is not prime (only prime fields GF(p) are supported)")]
    NotPrime(u64),

    #[error("matrix has {len} entries but {rows}x{cols} were expected")]
    MatrixShape {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("column index {index} out of range for a matrix with {cols} columns")]
    ColumnOutOfRange { index: usize, cols: usize },

    #[error("element {element} out of range for a ground set of size {ground}")]
    ElementOutOfRange { element: usize, ground: usize },

    #[error("ground set of size {n} exceeds the limit of {cap} elements; raise the cap or use a smaller input")]
    GroundTooLarge { n: usize, cap: usize },

    #[error("invalid basis family: {0}")]
    InvalidBases(String),

    #[error("invalid circuit family: {0}")]
    InvalidCircuits(String),

    #[error("rank {rank} exceeds ground set size {n}")]
    RankTooLarge { rank: usize, n: usize },

    #[error("{0} is not a circuit of the matroid")]
    NotACircuit(String),

    #[error("inconsistent Betti table: {0}")]
    Inconsistent(String),
}
