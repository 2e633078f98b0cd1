//! Half-vectorization of symmetric matrices and the linear action of
//! congruence `G ↦ PᵀGP` on it.
//!
//! Layout: upper triangle, row-major, diagonal included. Off-diagonal entries
//! are stored once, so `[[a, b], [b, c]]` becomes `(a, b, c)`.

use num_bigint::BigInt;

use super::{IntMatrix, LinalgError};

/// Number of stored coordinates for an `m × m` symmetric matrix.
pub const fn sym_len(m: usize) -> usize {
    m * (m + 1) / 2
}

/// Position of entry `(i, j)` (either order) in the half-vectorization.
pub fn sym_index(m: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    debug_assert!(j < m);
    // rows 0..i contribute m + (m-1) + ... + (m-i+1) entries
    i * m - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Iterates over the `(i, j)` pairs with `i <= j` in storage order.
pub fn sym_pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |i| (i..m).map(move |j| (i, j)))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymVec {
    dim: usize,
    coords: Vec<BigInt>,
}

impl SymVec {
    pub fn new(dim: usize, coords: Vec<BigInt>) -> Result<Self, LinalgError> {
        if coords.len() != sym_len(dim) {
            return Err(LinalgError::ShapeMismatch { expected: (sym_len(dim), 1), found: (coords.len(), 1) });
        }
        Ok(SymVec { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }
}

pub fn sym_vec(g: &IntMatrix) -> Result<SymVec, LinalgError> {
    if !g.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let m = g.rows();
    let coords = sym_pairs(m).map(|(i, j)| g[(i, j)].clone()).collect();
    Ok(SymVec { dim: m, coords })
}

pub fn sym_unvec(v: &SymVec) -> IntMatrix {
    let m = v.dim;
    let mut g = IntMatrix::zeros(m, m);
    for ((i, j), x) in sym_pairs(m).zip(&v.coords) {
        g[(i, j)] = x.clone();
        g[(j, i)] = x.clone();
    }
    g
}

/// Matrix `C(P)` with `sym_vec(PᵀGP) = C(P) · sym_vec(G)` for all symmetric `G`.
///
/// Column `(i, j)` is the image of the basis form `eᵢeⱼᵀ + eⱼeᵢᵀ` (or `eᵢeᵢᵀ`
/// on the diagonal), whose congruence image has entries
/// `P_ik P_jl + P_jk P_il`; all coefficients stay integral.
pub fn congruence_operator(p: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if !p.is_square() {
        return Err(LinalgError::NotSquare { rows: p.rows(), cols: p.cols() });
    }
    let m = p.rows();
    let s = sym_len(m);
    let mut c = IntMatrix::zeros(s, s);
    for (col, (i, j)) in sym_pairs(m).enumerate() {
        for (row, (k, l)) in sym_pairs(m).enumerate() {
            let mut v = &p[(i, k)] * &p[(j, l)];
            if i != j {
                v += &p[(j, k)] * &p[(i, l)];
            }
            c[(row, col)] = v;
        }
    }
    Ok(c)
}
