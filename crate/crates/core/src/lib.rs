//! Corank obstructions to nonpositively curved geometrizations of
//! generalized graph manifolds.
//!
//! A manifold is described combinatorially by its blocks `T^{n-2} × S_v` and
//! the integer matrices of its gluing maps in Waldhausen bases. From this data
//! two homogeneous integer systems are assembled:
//!
//! * [`ls1`]: every gluing is an isometry of the flat boundary-torus metrics,
//!   and each block's section/fiber products sum to zero;
//! * [`ls2`] (`n > 3`): every gluing is an isometry on the intersection of the
//!   two fiber lattices it meets.
//!
//! Their coranks `c(M)` and `c'(M)` do not depend on the chosen bases; a
//! nonpositive value rules out a geometrization.
//!
//! ```
//! use gmcheck::{fixtures, ls1, ls2, manifold};
//!
//! let m = manifold::validate(&fixtures::example_manifold()).unwrap();
//! assert_eq!(ls1::corank_c(&m), 4);
//! assert_eq!(ls2::corank_c_prime(&m).unwrap(), 0);
//! ```

pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod ls1;
pub mod ls2;
pub mod manifold;
pub mod random;
pub mod report;
pub mod system;

pub use linalg::IntMatrix;
pub use manifold::{validate, ManifoldSpec, ValidatedManifold};
pub use report::{run, ObstructionReport, RunOptions, Verdict};
