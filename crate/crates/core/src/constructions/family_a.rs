//! Flat equivariant embedding of the genus-`g` bouquet into `R^(2g-1)`.
//!
//! Coordinates split as `R^(g-1) ⊕ R^g`: a regular-simplex frame
//! `v_0, …, v_(g-1)` spans the first block and the standard basis
//! `e_0, …, e_(g-1)` spans the second. Circle `i` is
//!
//! `θ ↦ (1 − cosθ)·v_i − sinθ·e_i`,
//!
//! a unit circle through the origin (the shared vertex, θ = 0) with its far
//! point `2v_i` at θ = π. The flip of circle `i` negates coordinate `e_i`
//! and fixes every other circle pointwise because no other circle leaves
//! the `e_i = 0` hyperplane except circle `i` itself. A relabeling acts
//! block-diagonally: on the simplex block by the unique orthogonal map
//! permuting the frame, on the `e` block by the matching coordinate
//! permutation.

use nalgebra::{DMatrix, DVector};

use super::simplex::{simplex_frame, simplex_relabel_matrix};
use super::{EmbeddedBouquet, ParametricCircle, PostMap, Representation};
use crate::error::Result;
use crate::linalg::{block_diag, permutation_matrix};
use crate::symgroup::Permutation;

pub fn construction_a(genus: usize) -> Result<EmbeddedBouquet> {
    let frame = simplex_frame(genus)?;
    let dim = 2 * genus - 1;
    let simplex_dim = genus - 1;

    let circles = (0..genus)
        .map(|i| {
            let mut center = DVector::zeros(dim);
            center.rows_mut(0, simplex_dim).copy_from(&frame[i]);
            let axis_u = -&center;
            let mut axis_w = DVector::zeros(dim);
            axis_w[simplex_dim + i] = -1.0;
            ParametricCircle { center, axis_u, axis_w }
        })
        .collect();

    let rho = (0..genus)
        .map(|i| {
            let mut d = DVector::from_element(dim, 1.0);
            d[simplex_dim + i] = -1.0;
            DMatrix::from_diagonal(&d)
        })
        .collect();

    let tau_adjacent = (0..genus - 1)
        .map(|j| {
            let perm = Permutation::transposition(genus, j, j + 1);
            block_diag(
                &simplex_relabel_matrix(&frame, &perm),
                &permutation_matrix(&perm),
            )
        })
        .collect();

    EmbeddedBouquet::new(circles, Representation::new(rho, tau_adjacent)?, PostMap::None)
}
