//! Combinatorial description of a generalized graph manifold and its
//! validation.
//!
//! Coordinates on the first homology of a boundary torus `T_w` are taken in a
//! Waldhausen basis `(z_w, f_w^1, …, f_w^{n-2})`: coordinate 0 is the section
//! class, the remaining `n - 2` are fiber classes. Bases are rows and gluing
//! matrices act on the right, `(z_{-w}, f_{-w}) = (z_w, f_w) · Ψ_w`.
//!
//! Whether the section classes `z_w` of a block jointly bound in `H_1(M_v)`
//! cannot be checked from this data; supplying such bases is the caller's
//! responsibility.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{determinant, unimodular_inverse, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    pub id: String,
    /// Genus of the base surface `S_v`.
    pub genus: u64,
    /// Labels of the boundary tori of the block.
    pub boundary: Vec<String>,
}

impl BlockSpec {
    pub fn euler_characteristic(&self) -> i128 {
        2 - 2 * i128::from(self.genus) - self.boundary.len() as i128
    }
}

/// One gluing `ψ_w: T_w → T_{-w}`; `matrix` is `Ψ_w` in the Waldhausen bases of both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingSpec {
    pub from: String,
    pub to: String,
    pub matrix: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ManifoldSpec {
    pub dimension: usize,
    pub blocks: Vec<BlockSpec>,
    pub gluings: Vec<GluingSpec>,
    /// Free-form annotations carried through to reports.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManifoldError {
    #[error("dimension must be at least 3, got {0}")]
    BadDimension(usize),
    #[error("manifold has no blocks")]
    NoBlocks,
    #[error("block {block} has no boundary tori")]
    EmptyBoundary { block: String },
    #[error("block {block} has Euler characteristic {euler}, must be negative")]
    BadEuler { block: String, euler: i128 },
    #[error("gluing {from} -> {to}: matrix must be {expected}x{expected}, got {rows}x{cols}")]
    BadMatrixShape { from: String, to: String, expected: usize, rows: usize, cols: usize },
    #[error("gluing {from} -> {to}: determinant {determinant} is not ±1")]
    NotUnimodular { from: String, to: String, determinant: BigInt },
    #[error("gluing {from} -> {to} identifies fiber classes ({side} matrix has zero fiber row)")]
    FiberIdentified { from: String, to: String, side: &'static str },
    #[error("gluing refers to unknown torus {0}")]
    DanglingLabel(String),
    #[error("duplicate {kind} label {label}")]
    DuplicateLabel { kind: &'static str, label: String },
    #[error("torus {0} is glued to itself")]
    TorusGluedToItself(String),
    #[error("malformed basis change: {0}")]
    MalformedBasisChange(String),
}

impl ManifoldError {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            ManifoldError::BadDimension(_) => "BadDimension",
            ManifoldError::NoBlocks => "NoBlocks",
            ManifoldError::EmptyBoundary { .. } => "EmptyBoundary",
            ManifoldError::BadEuler { .. } => "BadEuler",
            ManifoldError::BadMatrixShape { .. } => "BadMatrixShape",
            ManifoldError::NotUnimodular { .. } => "NotUnimodular",
            ManifoldError::FiberIdentified { .. } => "FiberIdentified",
            ManifoldError::DanglingLabel(_) => "DanglingLabel",
            ManifoldError::DuplicateLabel { .. } => "DuplicateLabel",
            ManifoldError::TorusGluedToItself(_) => "TorusGluedToItself",
            ManifoldError::MalformedBasisChange(_) => "MalformedBasisChange",
        }
    }
}

/// The sub-blocks of `Ψ = [[a, b], [c, d]]` with `a` scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingBlocks {
    pub a: BigInt,
    /// `1 × (n-2)` row.
    pub b: IntMatrix,
    /// `(n-2) × 1` column.
    pub c: IntMatrix,
    /// `(n-2) × (n-2)`.
    pub d: IntMatrix,
}

impl GluingBlocks {
    pub fn assemble(&self) -> IntMatrix {
        let k = self.d.rows();
        let mut psi = IntMatrix::zeros(k + 1, k + 1);
        psi[(0, 0)] = self.a.clone();
        psi.set_block(0, 1, &self.b);
        psi.set_block(1, 0, &self.c);
        psi.set_block(1, 1, &self.d);
        psi
    }
}

/// Splits a square matrix of side at least 2 into its section/fiber blocks.
pub fn split_blocks(psi: &IntMatrix) -> GluingBlocks {
    assert!(psi.is_square() && psi.rows() >= 2, "gluing matrix must be square with side >= 2");
    let k = psi.rows() - 1;
    GluingBlocks {
        a: psi[(0, 0)].clone(),
        b: psi.submatrix(0, 1, 1, k),
        c: psi.submatrix(1, 0, k, 1),
        d: psi.submatrix(1, 1, k, k),
    }
}

fn fiber_row_is_zero(psi: &IntMatrix) -> bool {
    psi.row(0)[1..].iter().all(Zero::is_zero)
}

/// A gluing pair in the orientation supplied by the user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingPair {
    pub from: String,
    pub to: String,
    /// Index into [`ValidatedManifold::blocks`] of the block containing `from`.
    pub from_block: usize,
    pub to_block: usize,
    /// `Ψ_w`.
    pub forward: IntMatrix,
    /// `Ψ_{-w} = Ψ_w⁻¹`.
    pub backward: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusInfo {
    pub block: usize,
    /// Index into [`ValidatedManifold::pairs`], `None` for tori on `∂M`.
    pub pair: Option<usize>,
}

/// A manifold that passed [`validate`]. Blocks are ordered by id, pairs by
/// `(from, to)`, tori by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedManifold {
    spec: ManifoldSpec,
    blocks: Vec<BlockSpec>,
    pairs: Vec<GluingPair>,
    tori: BTreeMap<String, TorusInfo>,
}

impl ValidatedManifold {
    pub fn spec(&self) -> &ManifoldSpec {
        &self.spec
    }

    pub fn dimension(&self) -> usize {
        self.spec.dimension
    }

    /// Rank of the fiber lattice, `n - 2`.
    pub fn fiber_rank(&self) -> usize {
        self.spec.dimension - 2
    }

    pub fn blocks(&self) -> &[BlockSpec] {
        &self.blocks
    }

    pub fn pairs(&self) -> &[GluingPair] {
        &self.pairs
    }

    pub fn tori(&self) -> &BTreeMap<String, TorusInfo> {
        &self.tori
    }

    /// `W`: labels of gluing tori.
    pub fn gluing_tori(&self) -> impl Iterator<Item = &str> {
        self.tori.iter().filter(|(_, t)| t.pair.is_some()).map(|(l, _)| l.as_str())
    }

    /// `W_∂`: labels of tori on the boundary of the manifold.
    pub fn boundary_tori(&self) -> impl Iterator<Item = &str> {
        self.tori.iter().filter(|(_, t)| t.pair.is_none()).map(|(l, _)| l.as_str())
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_gluing_tori(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn num_boundary_tori(&self) -> usize {
        self.tori.len() - self.num_gluing_tori()
    }

    pub fn block_index(&self, id: &str) -> Option<usize> {
        self.blocks.binary_search_by(|b| b.id.as_str().cmp(id)).ok()
    }
}

pub fn validate(spec: &ManifoldSpec) -> Result<ValidatedManifold, ManifoldError> {
    let n = spec.dimension;
    if n < 3 {
        return Err(ManifoldError::BadDimension(n));
    }
    if spec.blocks.is_empty() {
        return Err(ManifoldError::NoBlocks);
    }

    let mut blocks = spec.blocks.clone();
    blocks.sort_by(|a, b| a.id.cmp(&b.id));
    for w in blocks.windows(2) {
        if w[0].id == w[1].id {
            return Err(ManifoldError::DuplicateLabel { kind: "block", label: w[0].id.clone() });
        }
    }

    let mut tori = BTreeMap::new();
    for (bi, block) in blocks.iter().enumerate() {
        if block.boundary.is_empty() {
            return Err(ManifoldError::EmptyBoundary { block: block.id.clone() });
        }
        let euler = block.euler_characteristic();
        if euler >= 0 {
            return Err(ManifoldError::BadEuler { block: block.id.clone(), euler });
        }
        for label in &block.boundary {
            let prev = tori.insert(label.clone(), TorusInfo { block: bi, pair: None });
            if prev.is_some() {
                return Err(ManifoldError::DuplicateLabel { kind: "torus", label: label.clone() });
            }
        }
    }

    let mut ordered: Vec<&GluingSpec> = spec.gluings.iter().collect();
    ordered.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));

    let mut pairs = Vec::with_capacity(ordered.len());
    let mut glued = BTreeSet::new();
    for g in ordered {
        if g.from == g.to {
            return Err(ManifoldError::TorusGluedToItself(g.from.clone()));
        }
        for label in [&g.from, &g.to] {
            if !tori.contains_key(label) {
                return Err(ManifoldError::DanglingLabel(label.clone()));
            }
            if !glued.insert(label.clone()) {
                return Err(ManifoldError::DuplicateLabel { kind: "gluing", label: label.clone() });
            }
        }
        let psi = &g.matrix;
        if psi.rows() != n - 1 || psi.cols() != n - 1 {
            return Err(ManifoldError::BadMatrixShape {
                from: g.from.clone(),
                to: g.to.clone(),
                expected: n - 1,
                rows: psi.rows(),
                cols: psi.cols(),
            });
        }
        let det = determinant(psi).expect("square by the shape check");
        if !det.abs().is_one() {
            return Err(ManifoldError::NotUnimodular { from: g.from.clone(), to: g.to.clone(), determinant: det });
        }
        let inverse = unimodular_inverse(psi).expect("determinant is ±1");
        for (side, m) in [("forward", psi), ("inverse", &inverse)] {
            if fiber_row_is_zero(m) {
                return Err(ManifoldError::FiberIdentified { from: g.from.clone(), to: g.to.clone(), side });
            }
        }
        pairs.push(GluingPair {
            from: g.from.clone(),
            to: g.to.clone(),
            from_block: tori[&g.from].block,
            to_block: tori[&g.to].block,
            forward: psi.clone(),
            backward: inverse,
        });
    }
    for (pi, p) in pairs.iter().enumerate() {
        for label in [&p.from, &p.to] {
            tori.get_mut(label).expect("checked above").pair = Some(pi);
        }
    }

    Ok(ValidatedManifold { spec: spec.clone(), blocks, pairs, tori })
}

/// A change of Waldhausen bases: per block a unimodular `σ_v` acting on the
/// fiber lattice, per boundary torus a column `n_w`, with `Σ_{w∈∂v} n_w = 0`.
///
/// On the torus `T_w` of block `v` the new basis is `(z, f)_w · h_w` with
/// `h_w = [[det σ_v, 0], [n_w, σ_v]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    pub sigma: BTreeMap<String, IntMatrix>,
    pub shift: BTreeMap<String, IntMatrix>,
}

impl BasisChange {
    pub fn identity(m: &ValidatedManifold) -> Self {
        let k = m.fiber_rank();
        BasisChange {
            sigma: m.blocks().iter().map(|b| (b.id.clone(), IntMatrix::identity(k))).collect(),
            shift: m.tori().keys().map(|l| (l.clone(), IntMatrix::zeros(k, 1))).collect(),
        }
    }

    /// Checks shapes, unimodularity of every `σ_v` and the zero-sum condition.
    pub fn check(&self, m: &ValidatedManifold) -> Result<(), ManifoldError> {
        let k = m.fiber_rank();
        let bad = |msg: String| Err(ManifoldError::MalformedBasisChange(msg));
        if self.sigma.len() != m.num_blocks() || self.shift.len() != m.tori().len() {
            return bad("entries do not match the block structure".into());
        }
        for block in m.blocks() {
            let Some(sigma) = self.sigma.get(&block.id) else {
                return bad(format!("missing sigma for block {}", block.id));
            };
            if sigma.rows() != k || sigma.cols() != k {
                return bad(format!("sigma for block {} must be {k}x{k}", block.id));
            }
            if !determinant(sigma).expect("square").abs().is_one() {
                return bad(format!("sigma for block {} is not unimodular", block.id));
            }
            let mut total = vec![BigInt::zero(); k];
            for label in &block.boundary {
                let Some(col) = self.shift.get(label) else {
                    return bad(format!("missing shift for torus {label}"));
                };
                if col.rows() != k || col.cols() != 1 {
                    return bad(format!("shift for torus {label} must be {k}x1"));
                }
                for (t, x) in total.iter_mut().zip(col.entries()) {
                    *t += x;
                }
            }
            if total.iter().any(|t| !t.is_zero()) {
                return bad(format!("shifts of block {} do not sum to zero", block.id));
            }
        }
        Ok(())
    }

    /// The matrix `h_w` for a torus; assumes [`BasisChange::check`] passed.
    pub fn h(&self, m: &ValidatedManifold, torus: &str) -> IntMatrix {
        let block = &m.blocks()[m.tori()[torus].block];
        let sigma = &self.sigma[&block.id];
        let k = sigma.rows();
        let mut h = IntMatrix::zeros(k + 1, k + 1);
        h[(0, 0)] = determinant(sigma).expect("square");
        h.set_block(1, 0, &self.shift[torus]);
        h.set_block(1, 1, sigma);
        h
    }

    /// The change equal to applying `self` first and then `then`, i.e. with
    /// `h_w = h_w(self) · h_w(then)`.
    pub fn compose(&self, then: &BasisChange, m: &ValidatedManifold) -> BasisChange {
        let mut sigma = BTreeMap::new();
        let mut shift = BTreeMap::new();
        for block in m.blocks() {
            let s1 = &self.sigma[&block.id];
            let s2 = &then.sigma[&block.id];
            let det2 = determinant(s2).expect("square");
            sigma.insert(block.id.clone(), s1 * s2);
            for label in &block.boundary {
                let n1 = &self.shift[label];
                let n2 = &then.shift[label];
                let n = n1.scale(&det2).add(&(s1 * n2));
                shift.insert(label.clone(), n);
            }
        }
        BasisChange { sigma, shift }
    }
}

/// Re-expresses every gluing matrix in the new bases:
/// `Ψ'_w = h_w⁻¹ · Ψ_w · h_{-w}`.
pub fn apply_basis_change(m: &ValidatedManifold, bc: &BasisChange) -> Result<ValidatedManifold, ManifoldError> {
    bc.check(m)?;
    let mut spec = m.spec().clone();
    for g in &mut spec.gluings {
        let h_from = bc.h(m, &g.from);
        let h_to = bc.h(m, &g.to);
        let h_from_inv = unimodular_inverse(&h_from).expect("det h = (det σ)^2 = 1");
        g.matrix = &(&h_from_inv * &g.matrix) * &h_to;
    }
    validate(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn block(id: &str, genus: u64, boundary: &[&str]) -> BlockSpec {
        BlockSpec { id: id.into(), genus, boundary: boundary.iter().map(|s| s.to_string()).collect() }
    }

    #[test]
    fn example_manifold_validates() {
        let m = validate(&fixtures::example_manifold()).unwrap();
        assert_eq!(m.num_gluing_tori(), 6);
        assert_eq!(m.num_boundary_tori(), 1);
        assert_eq!(m.boundary_tori().collect::<Vec<_>>(), vec!["0"]);
        for p in m.pairs() {
            assert_eq!(&p.forward * &p.backward, IntMatrix::identity(3));
        }
    }

    #[test]
    fn annulus_block_is_rejected() {
        let spec = ManifoldSpec { dimension: 4, blocks: vec![block("v", 0, &["a", "b"])], ..Default::default() };
        assert_eq!(validate(&spec), Err(ManifoldError::BadEuler { block: "v".into(), euler: 0 }));
    }

    #[test]
    fn identity_gluing_identifies_fibers() {
        let spec = ManifoldSpec {
            dimension: 4,
            blocks: vec![block("v", 0, &["a", "b", "c"])],
            gluings: vec![GluingSpec { from: "a".into(), to: "b".into(), matrix: IntMatrix::identity(3) }],
            notes: vec![],
        };
        assert_eq!(validate(&spec).unwrap_err().code(), "FiberIdentified");
    }

    #[test]
    fn fiber_condition_holds_for_inverse() {
        // e_0ᵀΨ⁻¹ = (α, 0) would force e_0ᵀ = α·(a, b), so b = 0 on one side iff on the other.
        for i in 1..=3 {
            let psi = fixtures::example_gluing_matrix(i);
            assert!(!fiber_row_is_zero(&psi));
            assert!(!fiber_row_is_zero(&unimodular_inverse(&psi).unwrap()));
        }
        let lower = IntMatrix::from_i64(&[[1, 0, 0], [4, 1, 0], [-2, 3, 1]]);
        assert!(fiber_row_is_zero(&lower));
        assert!(fiber_row_is_zero(&unimodular_inverse(&lower).unwrap()));
    }

    #[test]
    fn structural_errors() {
        let base = ManifoldSpec {
            dimension: 4,
            blocks: vec![block("v", 0, &["a", "b", "c"])],
            gluings: vec![],
            notes: vec![],
        };
        let mut s = base.clone();
        s.dimension = 2;
        assert_eq!(validate(&s).unwrap_err().code(), "BadDimension");

        let mut s = base.clone();
        s.blocks.push(block("u", 0, &["c", "d", "e"]));
        assert_eq!(validate(&s).unwrap_err().code(), "DuplicateLabel");

        let psi = fixtures::example_gluing_matrix(1);
        let mut s = base.clone();
        s.gluings.push(GluingSpec { from: "a".into(), to: "zz".into(), matrix: psi.clone() });
        assert_eq!(validate(&s).unwrap_err(), ManifoldError::DanglingLabel("zz".into()));

        let mut s = base.clone();
        s.gluings.push(GluingSpec { from: "a".into(), to: "b".into(), matrix: psi.clone() });
        s.gluings.push(GluingSpec { from: "c".into(), to: "a".into(), matrix: psi.clone() });
        assert_eq!(validate(&s).unwrap_err().code(), "DuplicateLabel");

        let mut s = base.clone();
        s.gluings.push(GluingSpec { from: "a".into(), to: "a".into(), matrix: psi.clone() });
        assert_eq!(validate(&s).unwrap_err().code(), "TorusGluedToItself");

        let mut s = base.clone();
        s.gluings.push(GluingSpec { from: "a".into(), to: "b".into(), matrix: IntMatrix::from_i64(&[[1, 1], [0, 1]]) });
        assert_eq!(validate(&s).unwrap_err().code(), "BadMatrixShape");

        let mut s = base.clone();
        s.gluings.push(GluingSpec {
            from: "a".into(),
            to: "b".into(),
            matrix: IntMatrix::from_i64(&[[1, 1, 0], [0, 2, 0], [0, 0, 1]]),
        });
        assert_eq!(validate(&s).unwrap_err().code(), "NotUnimodular");

        let mut s = base;
        s.blocks.clear();
        assert_eq!(validate(&s).unwrap_err(), ManifoldError::NoBlocks);
    }

    #[test]
    fn split_examples() {
        for i in 1..=3 {
            let psi = fixtures::example_gluing_matrix(i);
            let blocks = split_blocks(&psi);
            assert_eq!(blocks.a, BigInt::one());
            assert_eq!(blocks.b, IntMatrix::from_i64(&[[1, i - 1]]));
            assert_eq!(blocks.c, IntMatrix::from_i64(&[[0], [0]]));
            assert_eq!(blocks.d, IntMatrix::from_i64(&[[1, 1], [3, 2]]));
            assert_eq!(blocks.assemble(), psi);
        }
        let id = split_blocks(&IntMatrix::identity(3));
        assert_eq!(id.b, IntMatrix::zeros(1, 2));
        assert_eq!(id.d, IntMatrix::identity(2));
        let swap = split_blocks(&IntMatrix::from_i64(&[[0, 1], [1, 0]]));
        assert_eq!(swap.a, BigInt::zero());
        assert_eq!(swap.b, IntMatrix::from_i64(&[[1]]));
        assert_eq!(swap.c, IntMatrix::from_i64(&[[1]]));
        assert_eq!(swap.d, IntMatrix::from_i64(&[[0]]));
    }

    #[test]
    fn identity_change_is_identity() {
        let m = validate(&fixtures::example_manifold()).unwrap();
        let same = apply_basis_change(&m, &BasisChange::identity(&m)).unwrap();
        assert_eq!(same, m);
    }

    #[test]
    fn malformed_changes_are_rejected() {
        let m = validate(&fixtures::example_manifold()).unwrap();
        let mut bc = BasisChange::identity(&m);
        *bc.shift.get_mut("1").unwrap() = IntMatrix::from_i64(&[[1], [0]]);
        assert_eq!(apply_basis_change(&m, &bc).unwrap_err().code(), "MalformedBasisChange");

        let mut bc = BasisChange::identity(&m);
        *bc.sigma.get_mut("M1").unwrap() = IntMatrix::from_i64(&[[2, 0], [0, 1]]);
        assert!(bc.check(&m).is_err());

        let mut bc = BasisChange::identity(&m);
        bc.shift.remove("0");
        assert!(bc.check(&m).is_err());
    }

    #[test]
    fn shear_change_keeps_gluings_valid() {
        let m = validate(&fixtures::example_manifold()).unwrap();
        let mut bc = BasisChange::identity(&m);
        *bc.sigma.get_mut("M1").unwrap() = IntMatrix::from_i64(&[[1, 1], [0, 1]]);
        *bc.shift.get_mut("1").unwrap() = IntMatrix::from_i64(&[[2], [-1]]);
        *bc.shift.get_mut("-2").unwrap() = IntMatrix::from_i64(&[[-2], [1]]);
        let changed = apply_basis_change(&m, &bc).unwrap();
        assert_ne!(changed, m);
        for p in changed.pairs() {
            assert!(determinant(&p.forward).unwrap().abs().is_one());
            assert!(!fiber_row_is_zero(&p.forward));
        }
    }
}
