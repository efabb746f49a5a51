use thiserror::Error;

use crate::partitions::Partition;

/// Errors raised by the algebra and Thom-polynomial routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not contained in the block ({1}^{2})")]
    NotInBlock(Partition, usize, usize),

    #[error("partition {partition} has length {len}, which exceeds n = {n}")]
    LengthExceeds {
        partition: Partition,
        len: usize,
        n: usize,
    },

    #[error("j must not exceed i (got i = {i}, j = {j})")]
    JExceedsI { i: usize, j: usize },

    #[error("j must be at least {min} for this route (got j = {j})")]
    JTooSmall { j: usize, min: usize },

    #[error("h = r + i must be at least 1 (got i = {i}, r = {r})")]
    HTooSmall { i: usize, r: i64 },

    #[error("i must be positive")]
    IZero,

    #[error("route {route} does not apply: {reason}")]
    RouteInapplicable { route: String, reason: String },

    #[error("polynomial is not symmetric in alphabet {0}")]
    NotSymmetric(String),

    #[error("alphabet {name} has rank {rank}, below the required {required} for a faithful Schur expansion")]
    AlphabetTooSmall {
        name: String,
        rank: usize,
        required: usize,
    },

    #[error("non-integral coefficient {0} where an integer was required")]
    NonIntegral(String),

    #[error("tensor product or symmetric square of a formal difference has no weights")]
    WeightsOfDifference,

    #[error("too many root variables ({0}); at most 16 are supported")]
    TooManyVariables(usize),

    #[error("bivariate term ({alpha}, {beta}) cannot be lifted: {reason}")]
    LiftShape {
        alpha: Partition,
        beta: Partition,
        reason: String,
    },

    #[error("sequence {0:?} is not a nonincreasing sequence of positive integers")]
    InvalidPartition(Vec<i64>),

    #[error("cannot parse partition from {0:?}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
