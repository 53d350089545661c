//! A theta graph on the round 2-sphere: two poles joined by three meridian
//! arcs at equally spaced longitudes.
//!
//! This graph is homotopy equivalent to the genus-2 bouquet but its
//! symmetry group is larger than any bouquet model of the same rank
//! allows in `R^3`: the arcs can be permuted arbitrarily (the dihedral
//! symmetries of the longitude triangle) and the poles can be swapped
//! (reflection in the equator), giving `3! × 2 = 12` isometries, all
//! realized by orthogonal matrices.

use std::f64::consts::{PI, TAU};
use std::fmt;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::symgroup::Permutation;

pub const MERIDIANS: usize = 3;

/// Symmetry of the theta graph: permute the meridian arcs, optionally swap
/// the poles (which reverses every arc).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaElement {
    pub perm: Permutation,
    pub flip: bool,
}

impl ThetaElement {
    pub fn identity() -> Self {
        ThetaElement {
            perm: Permutation::identity(MERIDIANS),
            flip: false,
        }
    }

    /// Pole swap and arc permutation act on independent data, so the group
    /// is their direct product.
    pub fn compose(&self, other: &ThetaElement) -> ThetaElement {
        ThetaElement {
            perm: self.perm.compose(&other.perm),
            flip: self.flip ^ other.flip,
        }
    }

    pub fn inverse(&self) -> ThetaElement {
        ThetaElement {
            perm: self.perm.inverse(),
            flip: self.flip,
        }
    }

    pub fn act(&self, point: ThetaPoint) -> ThetaPoint {
        match point {
            ThetaPoint::NorthPole => {
                if self.flip {
                    ThetaPoint::SouthPole
                } else {
                    ThetaPoint::NorthPole
                }
            }
            ThetaPoint::SouthPole => {
                if self.flip {
                    ThetaPoint::NorthPole
                } else {
                    ThetaPoint::SouthPole
                }
            }
            ThetaPoint::OnArc { arc, t } => ThetaPoint::OnArc {
                arc: self.perm.apply(arc),
                t: if self.flip { 1.0 - t } else { t },
            },
        }
    }

    /// All 12 elements: arc permutations in lexicographic order, unflipped
    /// before flipped within each.
    pub fn enumerate() -> Vec<ThetaElement> {
        let mut out = Vec::with_capacity(12);
        for images in (0..MERIDIANS).permutations(MERIDIANS) {
            let perm = Permutation::from_images(images).expect("generated bijections");
            for flip in [false, true] {
                out.push(ThetaElement {
                    perm: perm.clone(),
                    flip,
                });
            }
        }
        out
    }
}

impl fmt::Display for ThetaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<usize> = self.perm.images().iter().map(|&v| v + 1).collect();
        write!(f, "{{arcs {:?}, pole swap {}}}", perm, self.flip)
    }
}

/// Point of the theta graph: a pole, or an interior point of arc `arc` at
/// parameter `t ∈ (0, 1)` (t = 0 is the north pole, t = 1 the south pole).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThetaPoint {
    NorthPole,
    SouthPole,
    OnArc { arc: usize, t: f64 },
}

impl ThetaPoint {
    /// Collapses the endpoints to the poles; rejects parameters outside
    /// `[0, 1]` (arcs do not wrap).
    pub fn on_arc(arc: usize, t: f64) -> Result<ThetaPoint> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!(
                "arc parameter {t} outside [0, 1]"
            )));
        }
        Ok(if t == 0.0 {
            ThetaPoint::NorthPole
        } else if t == 1.0 {
            ThetaPoint::SouthPole
        } else {
            ThetaPoint::OnArc { arc, t }
        })
    }
}

/// The embedded theta graph together with the orthogonal matrix realizing
/// each of its 12 symmetries. `matrices[k]` belongs to `elements()[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaGraph {
    longitudes: [f64; MERIDIANS],
    matrices: Vec<DMatrix<f64>>,
}

/// Rotation of the xy-plane by `angle`, z fixed.
fn rotation_z(angle: f64) -> DMatrix<f64> {
    let (s, c) = angle.sin_cos();
    DMatrix::from_row_slice(3, 3, &[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0])
}

/// Reflection of the xy-plane across the line at `angle`, z fixed.
fn reflection_z(angle: f64) -> DMatrix<f64> {
    let (s, c) = (2.0 * angle).sin_cos();
    DMatrix::from_row_slice(3, 3, &[c, s, 0.0, s, -c, 0.0, 0.0, 0.0, 1.0])
}

fn parity(perm: &Permutation) -> bool {
    let images = perm.images();
    let mut odd = false;
    for i in 0..images.len() {
        for j in 0..i {
            if images[j] > images[i] {
                odd = !odd;
            }
        }
    }
    odd
}

impl ThetaGraph {
    /// The standard theta graph: poles `(0,0,±1)`, meridians at longitudes
    /// `2πj/3`.
    pub fn standard() -> ThetaGraph {
        let longitudes =
            std::array::from_fn(|j| j as f64 * TAU / MERIDIANS as f64);
        let matrices = ThetaElement::enumerate()
            .iter()
            .map(|el| Self::matrix_for(&longitudes, el))
            .collect();
        ThetaGraph { longitudes, matrices }
    }

    /// An even arc permutation is a cyclic shift of the equally spaced
    /// longitudes, realized by a rotation about the polar axis; an odd one
    /// fixes exactly one arc and is the reflection across that arc's
    /// vertical plane. A pole swap is the reflection `z ↦ −z`, which
    /// reverses every arc and commutes with the rest.
    fn matrix_for(longitudes: &[f64; MERIDIANS], el: &ThetaElement) -> DMatrix<f64> {
        let planar = if parity(&el.perm) {
            let fixed = (0..MERIDIANS)
                .find(|&j| el.perm.apply(j) == j)
                .expect("an odd permutation of three items fixes one");
            reflection_z(longitudes[fixed])
        } else {
            // even permutations of three items are the shifts j ↦ j + k
            let k = el.perm.apply(0);
            rotation_z(longitudes[k])
        };
        if el.flip {
            let equator = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, -1.0]));
            planar * equator
        } else {
            planar
        }
    }

    pub fn longitudes(&self) -> &[f64; MERIDIANS] {
        &self.longitudes
    }

    pub fn matrices(&self) -> &[DMatrix<f64>] {
        &self.matrices
    }

    /// Rebuilds from stored longitudes and matrices (the JSON path), keeping
    /// whatever matrices the file claims so they can be verified afterwards.
    pub fn from_parts(longitudes: [f64; MERIDIANS], matrices: Vec<DMatrix<f64>>) -> Result<Self> {
        if matrices.len() != 12 {
            return Err(Error::Inconsistent(format!(
                "theta graph carries 12 symmetry matrices, got {}",
                matrices.len()
            )));
        }
        if matrices.iter().any(|m| m.nrows() != 3 || m.ncols() != 3) {
            return Err(Error::Inconsistent("theta matrices must be 3×3".into()));
        }
        Ok(ThetaGraph { longitudes, matrices })
    }

    pub fn elements(&self) -> Vec<ThetaElement> {
        ThetaElement::enumerate()
    }

    pub fn matrix_of(&self, el: &ThetaElement) -> &DMatrix<f64> {
        let idx = ThetaElement::enumerate()
            .iter()
            .position(|e| e == el)
            .expect("every theta element is enumerated");
        &self.matrices[idx]
    }

    /// Point on the sphere: arcs run from the north pole (t = 0) to the
    /// south pole (t = 1) along their longitude.
    pub fn eval(&self, point: ThetaPoint) -> DVector<f64> {
        match point {
            ThetaPoint::NorthPole => DVector::from_vec(vec![0.0, 0.0, 1.0]),
            ThetaPoint::SouthPole => DVector::from_vec(vec![0.0, 0.0, -1.0]),
            ThetaPoint::OnArc { arc, t } => {
                let phi = self.longitudes[arc];
                let polar = PI * t;
                DVector::from_vec(vec![
                    polar.sin() * phi.cos(),
                    polar.sin() * phi.sin(),
                    polar.cos(),
                ])
            }
        }
    }
}
