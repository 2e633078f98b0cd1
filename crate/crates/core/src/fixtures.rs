//! The bundled four-dimensional example: one block over a genus-0 surface
//! with seven boundary circles `-3, …, 3`, where `i` is glued to `-i` for
//! `i = 1, 2, 3` and torus `0` stays on the boundary.

use crate::linalg::IntMatrix;
use crate::manifold::{BlockSpec, GluingSpec, ManifoldSpec};

/// Note attached to the bundled example describing how its published
/// intermediate values relate to what this tool computes.
pub const EXAMPLE_NOTE: &str = "The published intermediate values for this example are \
not mutually consistent: the kernel vectors P_i = (i-2, 3i-1) do not annihilate the fiber \
rows b_i = (1, i-1) of the listed gluing matrices, and the published per-gluing equations \
(coefficient matrix [[8,38,45],[1,4,3],[24,102,105]]) do not follow from d_i = [[1,1],[3,2]]. \
Under the right-action convention used here the kernel vectors are (i-1, -1) up to sign and \
the fiber-intersection system has rows [-1,-4,-3], [1,-2,0], [3,-12,-15]. Both matrices have \
rank 3, so c' = 0 either way and the obstruction stands.";

/// Gluing matrix `Ψ_i = [[1, 1, i-1], [0, 1, 1], [0, 3, 2]]`.
pub fn example_gluing_matrix(i: i64) -> IntMatrix {
    IntMatrix::from_i64(&[[1, 1, i - 1], [0, 1, 1], [0, 3, 2]])
}

/// The published coefficient matrix of the example's fiber-intersection system.
pub fn published_coefficient_matrix() -> IntMatrix {
    IntMatrix::from_i64(&[[8, 38, 45], [1, 4, 3], [24, 102, 105]])
}

pub fn example_manifold() -> ManifoldSpec {
    ManifoldSpec {
        dimension: 4,
        blocks: vec![BlockSpec { id: "M1".into(), genus: 0, boundary: (-3..=3).map(|i: i32| i.to_string()).collect() }],
        gluings: (1..=3)
            .map(|i| GluingSpec { from: i.to_string(), to: (-i).to_string(), matrix: example_gluing_matrix(i) })
            .collect(),
        notes: vec![EXAMPLE_NOTE.to_string()],
    }
}
