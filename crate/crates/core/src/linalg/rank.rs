//! Fraction-free (Bareiss) elimination.
//!
//! Every intermediate entry is a minor of the input, so the division by the
//! previous pivot is always exact and no rationals are ever formed.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntMatrix, LinalgError};

/// Reduces `m` in place to a row echelon form, returning the pivot columns.
fn bareiss_echelon(m: &mut IntMatrix) -> (Vec<usize>, bool) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut odd_swaps = false;
    let mut k = 0;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(p) = (k..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != k {
            m.swap_rows(p, k);
            odd_swaps = !odd_swaps;
        }
        let pivot = m[(k, c)].clone();
        for i in k + 1..rows {
            let factor = m[(i, c)].clone();
            for j in c + 1..cols {
                let v = (&pivot * &m[(i, j)] - &factor * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
            m[(i, c)] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(c);
        k += 1;
    }
    (pivots, odd_swaps)
}

/// Rank of `a` over the rationals.
pub fn rational_rank(a: &IntMatrix) -> usize {
    let mut m = a.clone();
    bareiss_echelon(&mut m).0.len()
}

/// Exact determinant of a square matrix. The empty matrix has determinant 1.
pub fn determinant(a: &IntMatrix) -> Result<BigInt, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let (pivots, odd_swaps) = bareiss_echelon(&mut m);
    if pivots.len() < n {
        return Ok(BigInt::zero());
    }
    let det = m[(n - 1, n - 1)].clone();
    Ok(if odd_swaps { -det } else { det })
}
