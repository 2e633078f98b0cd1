//! The isometry system for boundary-torus forms and the first corank `c(M)`.
//!
//! Unknowns are the Gram matrices `G_w = [[x_w, l_w], [l_wᵀ, G_v]]` of every
//! boundary torus, with one shared `G_v` per block. Equations: for every gluing
//! `G_{-w} = Ψ_wᵀ G_w Ψ_w`, and for every block `Σ_{w∈∂v} l_w = 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::linalg::{congruence_operator, sym_pairs, sym_vec};
use crate::manifold::ValidatedManifold;
use crate::system::{probe_coefficients, GramLayout, LinearSystem, RowTag};

pub fn build_ls1(m: &ValidatedManifold) -> LinearSystem {
    let layout = GramLayout::full(m);
    let k = m.fiber_rank();
    let side = k + 1;

    let mut rows = Vec::new();
    let mut gluings = Vec::with_capacity(m.pairs().len());
    for p in m.pairs() {
        for (i, j) in sym_pairs(side) {
            rows.push(RowTag::Congruence { from: p.from.clone(), to: p.to.clone(), i, j });
        }
        gluings.push((
            layout.torus_position(&p.from).expect("torus in layout"),
            layout.torus_position(&p.to).expect("torus in layout"),
            congruence_operator(&p.forward).expect("square gluing matrix"),
        ));
    }
    let mut boundaries = Vec::with_capacity(m.num_blocks());
    for block in m.blocks() {
        for i in 0..k {
            rows.push(RowTag::BoundarySum { block: block.id.clone(), i });
        }
        let tori: Vec<usize> =
            block.boundary.iter().map(|l| layout.torus_position(l).expect("torus in layout")).collect();
        boundaries.push(tori);
    }

    let eval = |values: &[BigInt]| {
        let mut out = Vec::with_capacity(rows.len());
        for (from, to, c) in &gluings {
            let source = sym_vec(&layout.torus_gram(values, *from)).expect("symmetric");
            let target = sym_vec(&layout.torus_gram(values, *to)).expect("symmetric");
            let image = c.apply(source.coords());
            out.extend(target.coords().iter().zip(image).map(|(t, s)| t - s));
        }
        for tori in &boundaries {
            for i in 0..k {
                let total: BigInt = tori.iter().map(|&t| layout.mixed(values, t, i)).sum();
                out.push(total);
            }
        }
        out
    };
    let coefficients = probe_coefficients(layout.num_variables(), rows.len(), eval);
    LinearSystem { coefficients, variables: layout.variables(), rows }
}

/// The first corank invariant `c(M)`.
pub fn corank_c(m: &ValidatedManifold) -> i64 {
    build_ls1(m).corank()
}

/// Lower bound `(n−1)|W_∂| + (n−2)(n−3)/2·|V| − (n−1)(n−4)/4·|W|` for `c(M)`.
pub fn bound_c(n: usize, num_blocks: usize, num_gluing: usize, num_boundary: usize) -> BigRational {
    let n = BigInt::from(n);
    let int = |x: usize| BigRational::from_integer(BigInt::from(x));
    let one = BigInt::from(1);
    let q = |num: BigInt, den: i64| BigRational::new(num, BigInt::from(den));
    let mut bound = BigRational::zero();
    bound += q(&n - &one, 1) * int(num_boundary);
    bound += q((&n - 2) * (&n - 3), 2) * int(num_blocks);
    bound -= q((&n - &one) * (&n - 4), 4) * int(num_gluing);
    bound
}
