//! Regular-simplex frames: `g` unit vectors in `R^(g-1)` with all pairwise
//! inner products equal to `−1/(g−1)`, summing to zero. Any `g−1` of them
//! form a basis, which is what lets a relabeling of the frame extend to a
//! unique orthogonal map.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::symgroup::Permutation;

/// Vertices of a regular simplex centered at the origin of `R^(g-1)`.
///
/// Construction: project the standard basis of `R^g` onto the zero-sum
/// hyperplane and rescale to unit length; coordinates are taken in the
/// orthonormal basis `b_k = (1,…,1,−k,0,…,0)/√(k(k+1))` (k ones) of that
/// hyperplane. Frame vector `i` then has k-th coordinate proportional to
/// the i-th component of `b_k`.
pub fn simplex_frame(g: usize) -> Result<Vec<DVector<f64>>> {
    if g < 2 {
        return Err(Error::Domain(format!(
            "simplex frame needs at least 2 vertices, got {g}"
        )));
    }
    let scale = 1.0 / (1.0 - 1.0 / g as f64).sqrt();
    Ok((0..g)
        .map(|i| {
            DVector::from_fn(g - 1, |k, _| {
                let kk = k + 1;
                let b_ki = if i < kk {
                    1.0
                } else if i == kk {
                    -(kk as f64)
                } else {
                    0.0
                };
                scale * b_ki / ((kk * (kk + 1)) as f64).sqrt()
            })
        })
        .collect())
}

/// The unique orthogonal map of `R^(g-1)` sending frame vector `i` to frame
/// vector `perm(i)` for every `i`. Solved from the action on the basis
/// `v_0, …, v_(g-2)`; the action on the last frame vector is then automatic
/// because the frame sums to zero.
pub fn simplex_relabel_matrix(frame: &[DVector<f64>], perm: &Permutation) -> DMatrix<f64> {
    let g = frame.len();
    assert_eq!(perm.degree(), g);
    let d = g - 1;
    let from = DMatrix::from_columns(&frame[..d]);
    let to = DMatrix::from_columns(
        &(0..d).map(|i| frame[perm.apply(i)].clone()).collect::<Vec<_>>(),
    );
    // P · from = to ⟺ fromᵀ · Pᵀ = toᵀ
    let p_t = from
        .transpose()
        .lu()
        .solve(&to.transpose())
        .expect("any g-1 simplex frame vectors are linearly independent");
    p_t.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::orthogonality_residual;
    use itertools::Itertools;

    #[test]
    fn frame_gram_matrix_is_exactly_equiangular() {
        for g in 2..=8 {
            let frame = simplex_frame(g).unwrap();
            assert_eq!(frame.len(), g);
            let off = -1.0 / (g as f64 - 1.0);
            for i in 0..g {
                assert!((frame[i].norm_squared() - 1.0).abs() < 1e-14, "g={g} i={i}");
                for j in 0..i {
                    assert!(
                        (frame[i].dot(&frame[j]) - off).abs() < 1e-14,
                        "g={g} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn frame_sums_to_zero() {
        for g in 2..=8 {
            let frame = simplex_frame(g).unwrap();
            let sum = frame.iter().fold(DVector::zeros(g - 1), |acc, v| acc + v);
            assert!(sum.amax() < 1e-14);
        }
    }

    #[test]
    fn genus_two_frame_is_plus_minus_one() {
        let frame = simplex_frame(2).unwrap();
        assert!((frame[0][0] - 1.0).abs() < 1e-15);
        assert!((frame[1][0] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_frames_are_rejected() {
        assert!(simplex_frame(0).is_err());
        assert!(simplex_frame(1).is_err());
    }

    #[test]
    fn relabel_matrix_moves_every_frame_vector() {
        for g in 2..=5 {
            let frame = simplex_frame(g).unwrap();
            for images in (0..g).permutations(g) {
                let perm = Permutation::from_images(images).unwrap();
                let p = simplex_relabel_matrix(&frame, &perm);
                assert!(orthogonality_residual(&p) < 1e-12);
                for i in 0..g {
                    let moved = &p * &frame[i];
                    assert!(
                        (moved - &frame[perm.apply(i)]).amax() < 1e-12,
                        "g={g} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn relabel_matrix_is_a_homomorphism() {
        let g = 4;
        let frame = simplex_frame(g).unwrap();
        for images_a in (0..g).permutations(g) {
            let a = Permutation::from_images(images_a).unwrap();
            for images_b in (0..g).permutations(g) {
                let b = Permutation::from_images(images_b).unwrap();
                let lhs = simplex_relabel_matrix(&frame, &a) * simplex_relabel_matrix(&frame, &b);
                let rhs = simplex_relabel_matrix(&frame, &a.compose(&b));
                assert!((lhs - rhs).amax() < 1e-12);
            }
        }
    }
}
