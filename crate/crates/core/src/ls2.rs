//! The fiber-intersection system and the second corank `c'(M)`, defined for
//! `n > 3`.
//!
//! For a gluing `w -> -w` with `Ψ_w = [[a, b], [c, d]]`, the columns of an
//! integer kernel basis `P_w` of `b` satisfy `f_{-w} P_w = f_w d P_w`, and these
//! vectors span the intersection of the two fiber lattices in `T_w`. The gluing
//! must be an isometry there: `P_wᵀ G_{v'} P_w = (d P_w)ᵀ G_v (d P_w)`, where
//! `v` contains `w` and `v'` contains `-w`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::linalg::{integer_kernel_basis, sym_len, sym_pairs, sym_vec, IntMatrix};
use crate::manifold::{split_blocks, ValidatedManifold};
use crate::system::{probe_coefficients, GramLayout, LinearSystem, RowTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Ls2Error {
    #[error("fiber-intersection system needs dimension > 3, got {0}")]
    DimensionTooSmall(usize),
}

/// Blocks of one gluing matrix relevant to the fiber intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberIntersectionData {
    /// `1 × (n-2)`.
    pub b: IntMatrix,
    /// `(n-2) × (n-2)`.
    pub d: IntMatrix,
    /// `(n-2) × (n-3)` primitive kernel basis of `b`.
    pub kernel: IntMatrix,
}

pub fn fiber_kernel(psi: &IntMatrix, n: usize) -> Result<FiberIntersectionData, Ls2Error> {
    if n <= 3 {
        return Err(Ls2Error::DimensionTooSmall(n));
    }
    let blocks = split_blocks(psi);
    let kernel = integer_kernel_basis(&blocks.b);
    debug_assert_eq!(kernel.cols(), n - 3, "fiber row must be nonzero");
    Ok(FiberIntersectionData { b: blocks.b, d: blocks.d, kernel })
}

/// Fiber-intersection data attached to an oriented gluing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFiberData {
    pub from: String,
    pub to: String,
    /// Block containing `from`, whose `G_v` is conjugated by `d P`.
    pub domain_block: usize,
    /// Block containing `to`.
    pub codomain_block: usize,
    pub data: FiberIntersectionData,
}

/// Data for every gluing in its supplied orientation.
pub fn fiber_data(m: &ValidatedManifold) -> Result<Vec<PairFiberData>, Ls2Error> {
    m.pairs()
        .iter()
        .map(|p| {
            Ok(PairFiberData {
                from: p.from.clone(),
                to: p.to.clone(),
                domain_block: p.from_block,
                codomain_block: p.to_block,
                data: fiber_kernel(&p.forward, m.dimension())?,
            })
        })
        .collect()
}

/// Data for every gluing in the opposite orientation, built from `Ψ_w⁻¹`.
pub fn reversed_fiber_data(m: &ValidatedManifold) -> Result<Vec<PairFiberData>, Ls2Error> {
    m.pairs()
        .iter()
        .map(|p| {
            Ok(PairFiberData {
                from: p.to.clone(),
                to: p.from.clone(),
                domain_block: p.to_block,
                codomain_block: p.from_block,
                data: fiber_kernel(&p.backward, m.dimension())?,
            })
        })
        .collect()
}

/// Assembles the system from explicit per-gluing data. Self-gluings simply
/// contribute both terms to the same block's unknowns.
pub fn assemble_ls2(m: &ValidatedManifold, pairs: &[PairFiberData]) -> LinearSystem {
    let layout = GramLayout::fiber_only(m);
    let r = m.dimension().saturating_sub(3);
    let mut rows = Vec::with_capacity(pairs.len() * sym_len(r));
    let mut maps = Vec::with_capacity(pairs.len());
    for p in pairs {
        for (i, j) in sym_pairs(r) {
            rows.push(RowTag::FiberIntersection { from: p.from.clone(), to: p.to.clone(), i, j });
        }
        let kernel = &p.data.kernel;
        let pushed = &p.data.d * kernel;
        maps.push((p.domain_block, p.codomain_block, kernel.clone(), pushed));
    }

    let eval = |values: &[BigInt]| {
        let mut out = Vec::with_capacity(rows.len());
        for (domain, codomain, kernel, pushed) in &maps {
            let g_to = layout.fiber_gram(values, *codomain);
            let g_from = layout.fiber_gram(values, *domain);
            let lhs = &(&kernel.transpose() * &g_to) * kernel;
            let rhs = &(&pushed.transpose() * &g_from) * pushed;
            out.extend(sym_vec(&lhs.sub(&rhs)).expect("difference of congruences is symmetric").into_coords());
        }
        out
    };
    let coefficients = probe_coefficients(layout.num_variables(), rows.len(), eval);
    LinearSystem { coefficients, variables: layout.variables(), rows }
}

pub fn build_ls2(m: &ValidatedManifold) -> Result<LinearSystem, Ls2Error> {
    Ok(assemble_ls2(m, &fiber_data(m)?))
}

/// The second corank invariant `c'(M)`.
pub fn corank_c_prime(m: &ValidatedManifold) -> Result<i64, Ls2Error> {
    Ok(build_ls2(m)?.corank())
}

/// Lower bound `(n−2)(n−1)/2·|V| − (n−3)(n−2)/4·|W|` for `c'(M)`.
pub fn bound_c_prime(n: usize, num_blocks: usize, num_gluing: usize) -> BigRational {
    let n = BigInt::from(n);
    let v = BigRational::new((&n - 2) * (&n - 1) * BigInt::from(num_blocks), BigInt::from(2));
    let w = BigRational::new((&n - 3) * (&n - 2) * BigInt::from(num_gluing), BigInt::from(4));
    v - w
}
