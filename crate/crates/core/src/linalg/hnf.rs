//! Row Hermite normal form with unimodular transform, and the lattice
//! operations built on it: integer kernels and unimodular inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{determinant, IntMatrix, LinalgError};

/// Result of a row Hermite reduction: `transform · input = form`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowHermite {
    pub form: IntMatrix,
    pub transform: IntMatrix,
    /// Column of the leading entry of each nonzero row of `form`.
    pub pivots: Vec<usize>,
}

impl RowHermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Replaces rows `(k, i)` of both matrices by `[[s, t], [u, v]] · (row_k, row_i)`.
fn combine_rows(m: &mut IntMatrix, k: usize, i: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
    for j in 0..m.cols() {
        let rk = m[(k, j)].clone();
        let ri = m[(i, j)].clone();
        m[(k, j)] = s * &rk + t * &ri;
        m[(i, j)] = u * &rk + v * &ri;
    }
}

fn add_row_multiple(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let delta = q * &m[(source, j)];
        m[(target, j)] -= delta;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        let x = -&m[(i, j)];
        m[(i, j)] = x;
    }
}

/// Computes the row Hermite normal form of `a`.
///
/// Pivots are strictly positive and entries above each pivot are reduced into
/// `[0, pivot)`. The form is unique; the transform is deterministic.
pub fn row_hermite(a: &IntMatrix) -> RowHermite {
    let rows = a.rows();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut k = 0;
    for j in 0..a.cols() {
        if k == rows {
            break;
        }
        for i in k + 1..rows {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a_kj = h[(k, j)].clone();
            let a_ij = h[(i, j)].clone();
            let eg = a_kj.extended_gcd(&a_ij);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            // [[s, t], [-a_ij/g, a_kj/g]] has determinant 1.
            let uu = -(&a_ij / &g);
            let vv = &a_kj / &g;
            combine_rows(&mut h, k, i, &s, &t, &uu, &vv);
            combine_rows(&mut u, k, i, &s, &t, &uu, &vv);
        }
        if h[(k, j)].is_zero() {
            continue;
        }
        if h[(k, j)].is_negative() {
            negate_row(&mut h, k);
            negate_row(&mut u, k);
        }
        let pivot = h[(k, j)].clone();
        for i in 0..k {
            let q = h[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                add_row_multiple(&mut h, i, k, &q);
                add_row_multiple(&mut u, i, k, &q);
            }
        }
        pivots.push(j);
        k += 1;
    }
    RowHermite { form: h, transform: u, pivots }
}

/// Basis of the kernel lattice `{x ∈ ℤ^m : a·x = 0}` as the columns of an
/// `m × (m − rank a)` matrix.
///
/// The basis is returned in Hermite form (as rows of its transpose), so it
/// depends only on the lattice, not on the reduction path.
pub fn integer_kernel_basis(a: &IntMatrix) -> IntMatrix {
    let m = a.cols();
    let reduced = row_hermite(&a.transpose());
    let rank = reduced.rank();
    let k = m - rank;
    if k == 0 {
        return IntMatrix::zeros(m, 0);
    }
    let raw = reduced.transform.submatrix(rank, 0, k, m);
    row_hermite(&raw).form.transpose()
}

/// Exact inverse of a matrix with determinant ±1.
pub fn unimodular_inverse(a: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let det = determinant(a)?;
    if !det.abs().is_one() {
        return Err(LinalgError::NotUnimodular { determinant: det });
    }
    let reduced = row_hermite(a);
    debug_assert_eq!(reduced.form, IntMatrix::identity(a.rows()));
    Ok(reduced.transform)
}
