//! Equivariant embedding of the genus-`g` bouquet directly into the unit
//! sphere of `R^(2g)`.
//!
//! Coordinates come in `g` planes `(x_i, y_i)`. The shared vertex is
//! `v = (1/√g, 0, 1/√g, 0, …)`. Circle `i` keeps every plane `j ≠ i`
//! pinned at `(1/√g, 0)` and runs `(cosθ/√g, sinθ/√g)` in plane `i`, so
//! every point has squared norm `(g−1)/g + 1/g = 1`. The flip of circle
//! `i` negates `y_i`; a relabeling permutes the planes whole. All of it
//! visibly preserves the sphere.

use nalgebra::{DMatrix, DVector};

use super::{EmbeddedBouquet, ParametricCircle, PostMap, Representation};
use crate::error::{Error, Result};

pub fn construction_b(genus: usize) -> Result<EmbeddedBouquet> {
    if genus < 2 {
        return Err(Error::Domain(format!(
            "sphere construction is defined here for genus ≥ 2, got {genus}"
        )));
    }
    let dim = 2 * genus;
    let r = 1.0 / (genus as f64).sqrt();

    let circles = (0..genus)
        .map(|i| {
            let mut center = DVector::zeros(dim);
            for j in 0..genus {
                if j != i {
                    center[2 * j] = r;
                }
            }
            let mut axis_u = DVector::zeros(dim);
            axis_u[2 * i] = r;
            let mut axis_w = DVector::zeros(dim);
            axis_w[2 * i + 1] = r;
            ParametricCircle { center, axis_u, axis_w }
        })
        .collect();

    let rho = (0..genus)
        .map(|i| {
            let mut d = DVector::from_element(dim, 1.0);
            d[2 * i + 1] = -1.0;
            DMatrix::from_diagonal(&d)
        })
        .collect();

    let tau_adjacent = (0..genus - 1)
        .map(|j| {
            // swap planes j and j+1
            let mut m = DMatrix::<f64>::identity(dim, dim);
            for off in 0..2 {
                let a = 2 * j + off;
                let b = 2 * (j + 1) + off;
                m[(a, a)] = 0.0;
                m[(b, b)] = 0.0;
                m[(a, b)] = 1.0;
                m[(b, a)] = 1.0;
            }
            m
        })
        .collect();

    EmbeddedBouquet::new(circles, Representation::new(rho, tau_adjacent)?, PostMap::None)
}
