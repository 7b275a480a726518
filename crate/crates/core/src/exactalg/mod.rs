//! Exact sparse polynomial engine over `Z[q, q^-1]`.

mod hall_littlewood;
mod json;
mod laurent;
mod multi;
mod partition;
mod rational;
mod series;
mod symmetrize;

use thiserror::Error;

pub use hall_littlewood::{hall_littlewood, hall_littlewood_with, monomial_symmetric, padded_partition, t_factorial, v_lambda};
pub use laurent::LaurentQ;
pub use multi::{Exponents, MultiLaurent};
pub use partition::Partition2;
pub use rational::RationalFn;
pub use series::Series;
pub use symmetrize::{coset_representatives, is_symmetric, symmetrize, symmetrize_poly, symmetrize_with};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    NotExact,
    #[error("input is not invariant under {0}")]
    NotSymmetric(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
}
