//! Seeded random generators for basis changes, unimodular matrices and
//! whole manifolds. Used for invariance self-tests and fuzzing.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{unimodular_inverse, IntMatrix};
use crate::manifold::{validate, BasisChange, BlockSpec, GluingSpec, ManifoldSpec, ValidatedManifold};

/// Applies one random elementary row operation (shear, swap or sign flip) to `m`.
fn elementary_step<R: Rng>(rng: &mut R, m: &mut IntMatrix, bound: i64) {
    let n = m.rows();
    if n == 0 {
        return;
    }
    if n == 1 {
        if rng.gen_bool(0.5) {
            *m = m.neg();
        }
        return;
    }
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    match rng.gen_range(0..4) {
        0 => m.swap_rows(i, j),
        1 => {
            for c in 0..m.cols() {
                let x = -&m[(i, c)];
                m[(i, c)] = x;
            }
        }
        _ => {
            let mut q = rng.gen_range(-bound..=bound);
            if q == 0 {
                q = 1;
            }
            let q = BigInt::from(q);
            for c in 0..m.cols() {
                let delta = &q * &m[(j, c)];
                m[(i, c)] += delta;
            }
        }
    }
}

/// Product of at most `steps` random elementary matrices of side `n`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    let count = rng.gen_range(0..=steps);
    for _ in 0..count {
        elementary_step(rng, &mut m, bound.max(1));
    }
    m
}

/// Random well-formed basis change for `m`, deterministic in `seed`.
///
/// Each `σ_v` is a product of at most `size_bound` elementary matrices; shifts
/// are drawn from `[-size_bound, size_bound]` except the last one of each
/// block, which cancels the others.
pub fn random_basis_change(m: &ValidatedManifold, seed: u64, size_bound: u32) -> BasisChange {
    assert!(size_bound >= 1, "size_bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = i64::from(size_bound);
    let k = m.fiber_rank();
    let mut bc = BasisChange::identity(m);
    for block in m.blocks() {
        let sigma = random_unimodular(&mut rng, k, size_bound as usize, bound);
        bc.sigma.insert(block.id.clone(), sigma);
        let mut total = vec![BigInt::from(0); k];
        let (last, rest) = block.boundary.split_last().expect("blocks have boundary");
        for label in rest {
            let col: Vec<BigInt> = (0..k).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
            for (t, x) in total.iter_mut().zip(&col) {
                *t += x;
            }
            bc.shift.insert(label.clone(), IntMatrix::column_vector(col));
        }
        bc.shift.insert(last.clone(), IntMatrix::column_vector(total.into_iter().map(|t| -t).collect()));
    }
    bc
}

/// Shape of randomly generated manifolds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomManifoldParams {
    pub dimension: usize,
    pub max_blocks: usize,
    pub max_pairs: usize,
    /// Bound on the absolute value of gluing-matrix entries.
    pub entry_bound: i64,
}

/// A random gluing matrix with entries bounded by `bound` and a nonzero fiber row.
pub fn random_gluing_matrix<R: Rng>(rng: &mut R, side: usize, bound: i64) -> IntMatrix {
    loop {
        let m = random_unimodular(rng, side, 3 * side, 2);
        let fits = m.max_abs_entry() <= BigInt::from(bound);
        let fiber_ok = |a: &IntMatrix| a.row(0)[1..].iter().any(|x| *x != BigInt::from(0));
        if fits && fiber_ok(&m) && fiber_ok(&unimodular_inverse(&m).expect("unimodular")) {
            return m;
        }
    }
}

/// A random valid manifold, deterministic in `seed`.
///
/// Gluing tori are scattered over the blocks (self-gluings allowed); extra
/// boundary tori are added until every block has negative Euler characteristic.
pub fn random_manifold(seed: u64, params: RandomManifoldParams) -> ValidatedManifold {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.dimension;
    let num_blocks = rng.gen_range(1..=params.max_blocks.max(1));
    let num_pairs = rng.gen_range(0..=params.max_pairs);
    let mut blocks: Vec<BlockSpec> = (0..num_blocks)
        .map(|b| BlockSpec { id: format!("B{b}"), genus: rng.gen_range(0..=1), boundary: Vec::new() })
        .collect();

    let mut next = 0usize;
    let mut fresh = || {
        next += 1;
        format!("t{next:02}")
    };
    let mut gluings = Vec::with_capacity(num_pairs);
    for _ in 0..num_pairs {
        let (from, to) = (fresh(), fresh());
        blocks[rng.gen_range(0..num_blocks)].boundary.push(from.clone());
        blocks[rng.gen_range(0..num_blocks)].boundary.push(to.clone());
        let matrix = random_gluing_matrix(&mut rng, n - 1, params.entry_bound);
        gluings.push(GluingSpec { from, to, matrix });
    }
    for block in &mut blocks {
        let extra = rng.gen_range(0..=1);
        for _ in 0..extra {
            block.boundary.push(fresh());
        }
        while block.euler_characteristic() >= 0 {
            block.boundary.push(fresh());
        }
        block.boundary.shuffle(&mut rng);
    }
    let spec = ManifoldSpec { dimension: n, blocks, gluings, notes: Vec::new() };
    validate(&spec).expect("generated manifold is valid by construction")
}
