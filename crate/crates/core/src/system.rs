//! Homogeneous linear systems over Gram-matrix unknowns.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{rational_rank, sym_index, sym_len, sym_pairs, IntMatrix};
use crate::manifold::ValidatedManifold;

/// A scalar unknown: one entry of a block's fiber Gram matrix `G_v`, or the
/// section entries `x_w`, `l_w` of a boundary torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Variable {
    /// `(G_v)_{ij}` with `i <= j`.
    Fiber { block: String, i: usize, j: usize },
    /// `x_w`.
    Section { torus: String },
    /// `(l_w)_i`.
    Mixed { torus: String, i: usize },
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Fiber { block, i, j } => write!(f, "G[{block}]({i},{j})"),
            Variable::Section { torus } => write!(f, "x[{torus}]"),
            Variable::Mixed { torus, i } => write!(f, "l[{torus}]({i})"),
        }
    }
}

/// Where an equation comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RowTag {
    /// Entry `(i, j)` of `G_to − Ψᵀ G_from Ψ` for the gluing `from -> to`.
    Congruence { from: String, to: String, i: usize, j: usize },
    /// Fiber coordinate `i` of `Σ_{w∈∂v} l_w`.
    BoundarySum { block: String, i: usize },
    /// Entry `(i, j)` of `Pᵀ G_to P − (dP)ᵀ G_from (dP)` for the gluing `from -> to`.
    FiberIntersection { from: String, to: String, i: usize, j: usize },
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowTag::Congruence { from, to, i, j } => write!(f, "congruence {from}->{to} ({i},{j})"),
            RowTag::BoundarySum { block, i } => write!(f, "boundary-sum {block} ({i})"),
            RowTag::FiberIntersection { from, to, i, j } => {
                write!(f, "fiber-intersection {from}->{to} ({i},{j})")
            }
        }
    }
}

/// Index bookkeeping for the Gram unknowns of a manifold.
///
/// Ordering: blocks by id, each contributing the entries of `G_v` in
/// half-vectorization order; then (for the full layout) tori by label, each
/// contributing `x_w` followed by `l_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLayout {
    fiber_rank: usize,
    blocks: Vec<String>,
    tori: Vec<String>,
    block_of_torus: Vec<usize>,
}

impl GramLayout {
    /// Layout with `G_v` for every block and `x_w, l_w` for every torus.
    pub fn full(m: &ValidatedManifold) -> Self {
        let (tori, block_of_torus) = m.tori().iter().map(|(l, t)| (l.clone(), t.block)).unzip();
        GramLayout {
            fiber_rank: m.fiber_rank(),
            blocks: m.blocks().iter().map(|b| b.id.clone()).collect(),
            tori,
            block_of_torus,
        }
    }

    /// Layout with only the fiber Gram matrices `G_v`.
    pub fn fiber_only(m: &ValidatedManifold) -> Self {
        GramLayout {
            fiber_rank: m.fiber_rank(),
            blocks: m.blocks().iter().map(|b| b.id.clone()).collect(),
            tori: Vec::new(),
            block_of_torus: Vec::new(),
        }
    }

    fn per_block(&self) -> usize {
        sym_len(self.fiber_rank)
    }

    fn per_torus(&self) -> usize {
        self.fiber_rank + 1
    }

    pub fn num_variables(&self) -> usize {
        self.blocks.len() * self.per_block() + self.tori.len() * self.per_torus()
    }

    pub fn fiber_index(&self, block: usize, i: usize, j: usize) -> usize {
        block * self.per_block() + sym_index(self.fiber_rank, i, j)
    }

    fn torus_offset(&self, torus: usize) -> usize {
        self.blocks.len() * self.per_block() + torus * self.per_torus()
    }

    pub fn section_index(&self, torus: usize) -> usize {
        self.torus_offset(torus)
    }

    pub fn mixed_index(&self, torus: usize, i: usize) -> usize {
        self.torus_offset(torus) + 1 + i
    }

    pub fn torus_position(&self, label: &str) -> Option<usize> {
        self.tori.iter().position(|t| t == label)
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vars = Vec::with_capacity(self.num_variables());
        for block in &self.blocks {
            for (i, j) in sym_pairs(self.fiber_rank) {
                vars.push(Variable::Fiber { block: block.clone(), i, j });
            }
        }
        for torus in &self.tori {
            vars.push(Variable::Section { torus: torus.clone() });
            for i in 0..self.fiber_rank {
                vars.push(Variable::Mixed { torus: torus.clone(), i });
            }
        }
        vars
    }

    /// `G_v` evaluated at an assignment.
    pub fn fiber_gram(&self, values: &[BigInt], block: usize) -> IntMatrix {
        let k = self.fiber_rank;
        let mut g = IntMatrix::zeros(k, k);
        for (i, j) in sym_pairs(k) {
            let v = values[self.fiber_index(block, i, j)].clone();
            g[(i, j)] = v.clone();
            g[(j, i)] = v;
        }
        g
    }

    /// `G_w = [[x_w, l_w], [l_wᵀ, G_v]]` evaluated at an assignment.
    pub fn torus_gram(&self, values: &[BigInt], torus: usize) -> IntMatrix {
        let k = self.fiber_rank;
        let mut g = IntMatrix::zeros(k + 1, k + 1);
        g[(0, 0)] = values[self.section_index(torus)].clone();
        for i in 0..k {
            let l = values[self.mixed_index(torus, i)].clone();
            g[(0, i + 1)] = l.clone();
            g[(i + 1, 0)] = l;
        }
        g.set_block(1, 1, &self.fiber_gram(values, self.block_of_torus[torus]));
        g
    }

    /// `(l_w)_i` evaluated at an assignment.
    pub fn mixed(&self, values: &[BigInt], torus: usize, i: usize) -> BigInt {
        values[self.mixed_index(torus, i)].clone()
    }
}

/// Coefficient matrix of a linear map given as a closure, obtained by
/// evaluating it on each unit assignment.
pub(crate) fn probe_coefficients<F>(num_vars: usize, num_rows: usize, eval: F) -> IntMatrix
where
    F: Fn(&[BigInt]) -> Vec<BigInt>,
{
    let mut coefficients = IntMatrix::zeros(num_rows, num_vars);
    let mut unit = vec![BigInt::zero(); num_vars];
    for j in 0..num_vars {
        unit[j] = BigInt::one();
        let column = eval(&unit);
        assert_eq!(column.len(), num_rows, "expression produced the wrong number of rows");
        for (i, v) in column.into_iter().enumerate() {
            coefficients[(i, j)] = v;
        }
        unit[j] = BigInt::zero();
    }
    coefficients
}

/// A homogeneous integer system `A·x = 0` with named columns and tagged rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub coefficients: IntMatrix,
    pub variables: Vec<Variable>,
    pub rows: Vec<RowTag>,
}

impl LinearSystem {
    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_equations(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        rational_rank(&self.coefficients)
    }

    /// Number of variables minus rank.
    pub fn corank(&self) -> i64 {
        self.num_variables() as i64 - self.rank() as i64
    }

    /// Appends the rows of `other`, which must share the same variables.
    pub fn extend(&mut self, other: &LinearSystem) {
        assert_eq!(self.variables, other.variables, "systems must share variables");
        let mut coefficients = IntMatrix::zeros(self.num_equations() + other.num_equations(), self.num_variables());
        coefficients.set_block(0, 0, &self.coefficients);
        coefficients.set_block(self.num_equations(), 0, &other.coefficients);
        self.coefficients = coefficients;
        self.rows.extend(other.rows.iter().cloned());
    }
}
