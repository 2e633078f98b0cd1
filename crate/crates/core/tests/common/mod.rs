//! Oracles and random populations shared by the integration tests. Nothing in
//! here calls the elimination code under test.
#![allow(dead_code)]

use gmcheck::linalg::IntMatrix;
use gmcheck::random::{random_basis_change, random_manifold, RandomManifoldParams};
use gmcheck::ValidatedManifold;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank by textbook Gaussian elimination over exact fractions.
pub fn naive_rank(a: &IntMatrix) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        a.to_rows().into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        let pivot_row: Vec<BigRational> = m[rank].iter().map(|x| x / &pivot).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank {
                row.clone_from(&pivot_row);
            } else if !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `k · c = x` over the rationals for a full-column-rank `k`, returning
/// `None` when there is no solution.
pub fn rational_coordinates(k: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigRational>> {
    let (rows, cols) = (k.rows(), k.cols());
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r: Vec<BigRational> = k.row(i).iter().cloned().map(BigRational::from_integer).collect();
            r.push(BigRational::from_integer(x[i].clone()));
            r
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, p);
        let pivot = m[r][c].clone();
        let pivot_row: Vec<BigRational> = m[r].iter().map(|x| x / &pivot).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                row.clone_from(&pivot_row);
            } else if !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    if (r..rows).any(|i| !m[i][cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|i| m[i][cols].clone()).collect())
}

/// Checks by enumeration of the box `[-bound, bound]^m` that every integer
/// kernel vector of `a` is an integer combination of the columns of `k`.
pub fn kernel_is_saturated_by_enumeration(a: &IntMatrix, k: &IntMatrix, bound: i64) -> bool {
    let m = a.cols();
    let mut x = vec![-bound; m];
    loop {
        let v: Vec<BigInt> = x.iter().map(|&t| BigInt::from(t)).collect();
        if a.apply(&v).iter().all(Zero::is_zero) {
            match rational_coordinates(k, &v) {
                Some(c) if c.iter().all(|q| q.is_integer()) => {}
                _ => return false,
            }
        }
        let mut i = 0;
        loop {
            if i == m {
                return true;
            }
            x[i] += 1;
            if x[i] <= bound {
                break;
            }
            x[i] = -bound;
            i += 1;
        }
    }
}

/// Random integer matrix with entries in `[-9, 9]` and side lengths up to 8.
/// A third of the draws are sparse and a third contain repeated rows so that
/// rank-deficient inputs are common.
pub fn random_small_matrix<R: Rng>(rng: &mut R) -> IntMatrix {
    let rows = rng.gen_range(0..=8);
    let cols = rng.gen_range(0..=8);
    let style = rng.gen_range(0..3);
    let mut data: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| match style {
                    1 => {
                        if rng.gen_bool(0.7) {
                            0
                        } else {
                            rng.gen_range(-1..=1)
                        }
                    }
                    _ => rng.gen_range(-9..=9),
                })
                .collect()
        })
        .collect();
    if style == 2 && rows > 1 {
        for _ in 0..rng.gen_range(1..rows) {
            let src = rng.gen_range(0..rows);
            let dst = rng.gen_range(0..rows);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            data[dst] = data[src].iter().map(|x| sign * x).collect();
        }
    }
    if rows == 0 {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_rows(&data).unwrap()
}

pub fn params(dimension: usize) -> RandomManifoldParams {
    RandomManifoldParams { dimension, max_blocks: 3, max_pairs: 4, entry_bound: 9 }
}

pub fn population(dimension: usize, count: u64, offset: u64) -> Vec<ValidatedManifold> {
    (0..count).map(|s| random_manifold(offset + s, params(dimension))).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn change_pairs(
    dimension: usize,
    count: u64,
    offset: u64,
) -> Vec<(ValidatedManifold, gmcheck::manifold::BasisChange)> {
    (0..count)
        .map(|s| {
            let m = random_manifold(offset + s, params(dimension));
            let bc = random_basis_change(&m, 1_000_003 * (offset + s + 1), 3);
            (m, bc)
        })
        .collect()
}
