//! Equivariant embeddings of the bouquet, stored as exact geometric data.
//!
//! An embedding is a list of round circles through a common vertex plus an
//! orthogonal-matrix representation of the symmetry group. The circle for
//! label `i` is parametrized as `center + cosθ·axis_u + sinθ·axis_w`, with
//! θ = 0 at the shared vertex, so `center + axis_u` agrees across circles.
//!
//! Two closed-form families are provided: [`construction_a`] places the
//! bouquet in `R^(2g-1)` using a regular-simplex frame, and
//! [`construction_b`] places it on the unit sphere in `R^(2g)`. A flat
//! embedding can be carried onto a sphere one dimension up by
//! [`EmbeddedBouquet::compactify`], which composes evaluation with the
//! inverse stereographic map. [`b2_demo`] is the hand-sized genus-2 picture
//! in `R^3`, and [`theta`] is a theta-graph on `S^2` with a larger symmetry
//! group than any bouquet of the same genus.

mod family_a;
mod family_b;
mod simplex;
mod sphere;
pub mod theta;

pub use family_a::construction_a;
pub use family_b::construction_b;
pub use simplex::{simplex_frame, simplex_relabel_matrix};
pub use sphere::{inverse_stereographic, stereographic};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::block_diag;
use crate::symgroup::{GraphPoint, GroupElement, Permutation};

/// Round circle `θ ↦ center + cosθ·axis_u + sinθ·axis_w`. The two axes are
/// expected orthogonal with equal length (the radius); the verifier, not the
/// constructor, enforces that.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricCircle {
    pub center: DVector<f64>,
    pub axis_u: DVector<f64>,
    pub axis_w: DVector<f64>,
}

impl ParametricCircle {
    pub fn eval(&self, angle: f64) -> DVector<f64> {
        &self.center + angle.cos() * &self.axis_u + angle.sin() * &self.axis_w
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }
}

/// Map applied after flat circle evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PostMap {
    #[serde(rename = "none")]
    None,
    #[serde(rename = "inverse_stereographic")]
    InverseStereographic,
}

/// Orthogonal-matrix model of the symmetry group: one matrix per circle
/// flip and one per adjacent relabeling `(i, i+1)`. Matrices for arbitrary
/// elements are assembled on demand from these generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    dim: usize,
    rho: Vec<DMatrix<f64>>,
    tau_adjacent: Vec<DMatrix<f64>>,
}

impl Representation {
    /// `rho[i]` represents the flip of circle `i`; `tau_adjacent[j]`
    /// represents the relabeling `(j, j+1)`. Requires one flip per circle
    /// and exactly `genus − 1` adjacent relabelings, all square of one size.
    pub fn new(rho: Vec<DMatrix<f64>>, tau_adjacent: Vec<DMatrix<f64>>) -> Result<Self> {
        let genus = rho.len();
        if genus == 0 {
            return Err(Error::Inconsistent("no flip matrices".into()));
        }
        if tau_adjacent.len() + 1 != genus {
            return Err(Error::Inconsistent(format!(
                "expected {} adjacent relabeling matrices for genus {genus}, got {}",
                genus - 1,
                tau_adjacent.len()
            )));
        }
        let dim = rho[0].nrows();
        for m in rho.iter().chain(&tau_adjacent) {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::Inconsistent(format!(
                    "matrix size {}×{} does not match representation dimension {dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(Representation { dim, rho, tau_adjacent })
    }

    pub fn genus(&self) -> usize {
        self.rho.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, i: usize) -> &DMatrix<f64> {
        &self.rho[i]
    }

    pub fn rho_all(&self) -> &[DMatrix<f64>] {
        &self.rho
    }

    /// Matrix of the relabeling `(j, j+1)`.
    pub fn tau_adjacent(&self, j: usize) -> &DMatrix<f64> {
        &self.tau_adjacent[j]
    }

    pub fn tau_adjacent_all(&self) -> &[DMatrix<f64>] {
        &self.tau_adjacent
    }

    /// Matrix of a pure relabeling, assembled from adjacent generators.
    pub fn tau_of(&self, perm: &Permutation) -> DMatrix<f64> {
        assert_eq!(perm.degree(), self.genus());
        let mut m = DMatrix::<f64>::identity(self.dim, self.dim);
        for j in perm.adjacent_factors() {
            m *= &self.tau_adjacent[j];
        }
        m
    }

    /// Matrix of an arbitrary element in its normal form: relabeling times
    /// the product of the flips it turns on.
    pub fn matrix_of(&self, el: &GroupElement) -> DMatrix<f64> {
        assert_eq!(el.genus(), self.genus());
        let mut m = self.tau_of(el.perm());
        for (i, &s) in el.signs().iter().enumerate() {
            if s == 1 {
                m *= &self.rho[i];
            }
        }
        m
    }
}

/// An embedded bouquet: flat circle data, the group representation, and an
/// optional sphere-lifting post map.
///
/// With `post_map == None`, points live in `R^m` where `m` is the circle
/// dimension. With `post_map == InverseStereographic`, evaluation lifts each
/// flat point onto the unit sphere in `R^(m+1)`, and the representation
/// matrices are `(m+1)×(m+1)`, acting downstream of the lift.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedBouquet {
    genus: usize,
    post_map: PostMap,
    circles: Vec<ParametricCircle>,
    representation: Representation,
}

impl EmbeddedBouquet {
    pub fn new(
        circles: Vec<ParametricCircle>,
        representation: Representation,
        post_map: PostMap,
    ) -> Result<Self> {
        let genus = circles.len();
        if genus == 0 {
            return Err(Error::Inconsistent("no circles".into()));
        }
        if representation.genus() != genus {
            return Err(Error::Inconsistent(format!(
                "{genus} circles but representation genus {}",
                representation.genus()
            )));
        }
        let flat_dim = circles[0].dim();
        if circles.iter().any(|c| {
            c.dim() != flat_dim || c.axis_u.len() != flat_dim || c.axis_w.len() != flat_dim
        }) {
            return Err(Error::Inconsistent(
                "circle vectors disagree on dimension".into(),
            ));
        }
        let expected = match post_map {
            PostMap::None => flat_dim,
            PostMap::InverseStereographic => flat_dim + 1,
        };
        if representation.dim() != expected {
            return Err(Error::Inconsistent(format!(
                "representation dimension {} but ambient dimension {expected}",
                representation.dim()
            )));
        }
        Ok(EmbeddedBouquet {
            genus,
            post_map,
            circles,
            representation,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Dimension of the space the embedded points live in (after the post
    /// map, if any).
    pub fn ambient_dim(&self) -> usize {
        self.representation.dim()
    }

    /// Dimension of the stored circle data, before any post map.
    pub fn flat_dim(&self) -> usize {
        self.circles[0].dim()
    }

    pub fn post_map(&self) -> PostMap {
        self.post_map
    }

    pub fn circles(&self) -> &[ParametricCircle] {
        &self.circles
    }

    pub fn representation(&self) -> &Representation {
        &self.representation
    }

    /// Embedded image of a point of the bouquet. The vertex is evaluated on
    /// circle 0; the verifier checks all circles agree there.
    pub fn eval(&self, point: GraphPoint) -> DVector<f64> {
        let flat = match point {
            GraphPoint::Vertex => self.circles[0].eval(0.0),
            GraphPoint::OnCircle { circle, angle } => self.circles[circle].eval(angle),
        };
        match self.post_map {
            PostMap::None => flat,
            PostMap::InverseStereographic => inverse_stereographic(&flat),
        }
    }

    /// Image of the shared vertex.
    pub fn vertex(&self) -> DVector<f64> {
        self.eval(GraphPoint::Vertex)
    }

    /// Lifts a flat embedding onto the unit sphere one dimension up via the
    /// inverse stereographic map. Representation matrices gain a fixed last
    /// coordinate, which is exactly how orthogonal maps commute with the
    /// lift.
    pub fn compactify(&self) -> Result<EmbeddedBouquet> {
        if self.post_map == PostMap::InverseStereographic {
            return Err(Error::Domain("embedding is already on a sphere".into()));
        }
        let one = DMatrix::<f64>::identity(1, 1);
        let lift = |m: &DMatrix<f64>| block_diag(m, &one);
        let representation = Representation::new(
            self.representation.rho.iter().map(lift).collect(),
            self.representation.tau_adjacent.iter().map(lift).collect(),
        )?;
        EmbeddedBouquet::new(
            self.circles.clone(),
            representation,
            PostMap::InverseStereographic,
        )
    }

    /// The same bouquet seen through an orthogonal change of flat
    /// coordinates: circle data maps by `q`, matrices conjugate by `q`
    /// (extended by a fixed last coordinate when a post map is present).
    pub fn conjugated(&self, q: &DMatrix<f64>) -> Result<EmbeddedBouquet> {
        let flat = self.flat_dim();
        if q.nrows() != flat || q.ncols() != flat {
            return Err(Error::Inconsistent(format!(
                "conjugating matrix is {}×{}, flat dimension is {flat}",
                q.nrows(),
                q.ncols()
            )));
        }
        let circles = self
            .circles
            .iter()
            .map(|c| ParametricCircle {
                center: q * &c.center,
                axis_u: q * &c.axis_u,
                axis_w: q * &c.axis_w,
            })
            .collect();
        let lifted = match self.post_map {
            PostMap::None => q.clone(),
            PostMap::InverseStereographic => block_diag(q, &DMatrix::<f64>::identity(1, 1)),
        };
        let conj = |m: &DMatrix<f64>| &lifted * m * lifted.transpose();
        let representation = Representation::new(
            self.representation.rho.iter().map(conj).collect(),
            self.representation.tau_adjacent.iter().map(conj).collect(),
        )?;
        EmbeddedBouquet::new(circles, representation, self.post_map)
    }
}

/// The genus-2 bouquet drawn by hand in `R^3`: two unit circles in
/// perpendicular planes, meeting at the origin, stacked along the z-axis.
/// The flip of each circle is a coordinate reflection and the swap of the
/// two circles is a rotation by π around the axis `x = y, z = 0`.
pub fn b2_demo() -> EmbeddedBouquet {
    let c1 = ParametricCircle {
        center: DVector::from_vec(vec![0.0, 0.0, -1.0]),
        axis_u: DVector::from_vec(vec![0.0, 0.0, 1.0]),
        axis_w: DVector::from_vec(vec![1.0, 0.0, 0.0]),
    };
    let c2 = ParametricCircle {
        center: DVector::from_vec(vec![0.0, 0.0, 1.0]),
        axis_u: DVector::from_vec(vec![0.0, 0.0, -1.0]),
        axis_w: DVector::from_vec(vec![0.0, 1.0, 0.0]),
    };
    let rho1 = DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 1.0, 1.0]));
    let rho2 = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, 1.0]));
    let swap = DMatrix::from_row_slice(
        3,
        3,
        &[
            0.0, 1.0, 0.0, //
            1.0, 0.0, 0.0, //
            0.0, 0.0, -1.0,
        ],
    );
    let representation = Representation::new(vec![rho1, rho2], vec![swap]).expect("fixed sizes");
    EmbeddedBouquet::new(vec![c1, c2], representation, PostMap::None).expect("fixed data")
}
