use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type {series}{rank}: {reason}")]
    InvalidCartanType {
        series: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("invalid isogeny: {0}")]
    InvalidIsogeny(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("non-rational character: {0}")]
    NonRationalCharacter(String),
    #[error("character tables are reduced modulo different primes ({0} and {1})")]
    IncompatiblePrimes(u64, u64),
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An internal identity failed; always a bug or unsupported input.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
