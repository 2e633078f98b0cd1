//! Exact integer linear algebra: rank, determinants, Hermite reduction,
//! kernel lattices and symmetric half-vectorization.
//!
//! Nothing here touches floating point.

mod hnf;
mod matrix;
mod rank;
mod sym;

use num_bigint::BigInt;
use thiserror::Error;

pub use hnf::{integer_kernel_basis, row_hermite, unimodular_inverse, RowHermite};
pub use matrix::IntMatrix;
pub use rank::{determinant, rational_rank};
pub use sym::{congruence_operator, sym_index, sym_len, sym_pairs, sym_unvec, sym_vec, SymVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not unimodular (determinant {determinant})")]
    NotUnimodular { determinant: BigInt },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("row {row} has a different length than row 0")]
    RaggedRows { row: usize },
}
