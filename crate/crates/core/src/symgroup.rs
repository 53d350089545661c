//! Exact model of the symmetry group of a bouquet of `g` circles joined at
//! one vertex.
//!
//! A symmetry flips some subset of the circles (reversing their
//! parametrization) and then relabels the circles by a permutation. The
//! group is the semidirect product of the flip group `(Z/2)^g` by the
//! relabeling group `S_g`, of order `2^g · g!`. Everything here is integer
//! arithmetic; floating point only appears when an element acts on a
//! parametrized point.

use std::f64::consts::{PI, TAU};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Enumeration cap: `2^8 · 8!` is over ten million elements, past any use
/// this crate has for an exhaustive list.
pub const MAX_ENUMERATION_GENUS: usize = 7;

/// Permutation of circle labels `0..g`, stored as its image vector:
/// `images[k]` is where label `k` goes. JSON input and output use 1-based
/// labels; the API is 0-based throughout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::Inconsistent(format!(
                    "not a permutation of 0..{n}: {images:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition swapping `a` and `b` in `0..degree`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        assert!(a < degree && b < degree && a != b);
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `(self ∘ other)(k) = self(other(k))`: `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&k| self.images[k]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v] = k;
        }
        Permutation { images }
    }

    /// Factors `self` into adjacent transpositions `(j, j+1)`, identified by
    /// their lower index `j`. Composing the factors in returned order (first
    /// entry outermost, so the last entry acts first) reproduces `self`.
    pub fn adjacent_factors(&self) -> Vec<usize> {
        // Bubble-sort the image vector. Swapping entries j, j+1 composes an
        // adjacent transposition on the right, so when the vector reaches the
        // identity we have self ∘ t_{j_1} ∘ ... ∘ t_{j_k} = id.
        let mut img = self.images.clone();
        let mut swaps = Vec::new();
        let n = img.len();
        loop {
            let mut done = true;
            for j in 0..n.saturating_sub(1) {
                if img[j] > img[j + 1] {
                    img.swap(j, j + 1);
                    swaps.push(j);
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        swaps.reverse();
        swaps
    }
}

/// A point of the bouquet: the shared vertex, or a point of one circle at an
/// angle in the open interval `(0, 2π)`. Angle 0 is the vertex itself, which
/// is why it is excluded from `OnCircle`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphPoint {
    Vertex,
    OnCircle { circle: usize, angle: f64 },
}

impl GraphPoint {
    /// Normalizes `angle` into `[0, 2π)` and collapses angle 0 to the vertex.
    pub fn on_circle(circle: usize, angle: f64) -> GraphPoint {
        let a = angle.rem_euclid(TAU);
        // rem_euclid of a tiny negative value rounds to TAU itself.
        if a == 0.0 || a >= TAU {
            GraphPoint::Vertex
        } else {
            GraphPoint::OnCircle { circle, angle: a }
        }
    }

    /// Equality up to `tol` in circular distance on the same circle.
    pub fn approx_eq(&self, other: &GraphPoint, tol: f64) -> bool {
        match (self, other) {
            (GraphPoint::Vertex, GraphPoint::Vertex) => true,
            (
                GraphPoint::OnCircle { circle: c1, angle: a1 },
                GraphPoint::OnCircle { circle: c2, angle: a2 },
            ) => {
                let d = (a1 - a2).abs();
                c1 == c2 && (d <= tol || (TAU - d) <= tol)
            }
            _ => false,
        }
    }
}

/// Fixed-point set of a symmetry restricted to one circle.
#[derive(Debug, Clone, PartialEq)]
pub enum FixedPoints {
    /// The circle is fixed pointwise.
    All,
    /// Finitely many fixed points.
    Points(Vec<GraphPoint>),
}

#[derive(Serialize, Deserialize)]
struct ElementDto {
    signs: Vec<u8>,
    perm: Vec<usize>,
}

/// Symmetry of a bouquet of `g` circles, in normal form: first flip the
/// circles whose `signs` entry is 1 (circle `i` maps to itself with the
/// angle reversed), then relabel circles by `perm`.
///
/// JSON form uses 1-based circle labels: `{"signs":[0,1,0],"perm":[2,1,3]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ElementDto", into = "ElementDto")]
pub struct GroupElement {
    signs: Vec<u8>,
    perm: Permutation,
}

impl GroupElement {
    pub fn identity(genus: usize) -> Self {
        GroupElement {
            signs: vec![0; genus],
            perm: Permutation::identity(genus),
        }
    }

    /// The flip of circle `i` (0-based) alone.
    pub fn flip(genus: usize, i: usize) -> Self {
        assert!(i < genus, "circle index {i} out of range for genus {genus}");
        let mut signs = vec![0; genus];
        signs[i] = 1;
        GroupElement {
            signs,
            perm: Permutation::identity(genus),
        }
    }

    /// The pure relabeling by `perm`, flipping nothing.
    pub fn relabel(perm: Permutation) -> Self {
        GroupElement {
            signs: vec![0; perm.degree()],
            perm,
        }
    }

    /// The relabeling by the transposition `(a b)`.
    pub fn relabel_swap(genus: usize, a: usize, b: usize) -> Self {
        GroupElement::relabel(Permutation::transposition(genus, a, b))
    }

    pub fn new(signs: Vec<u8>, perm: Permutation) -> Result<Self> {
        if signs.len() != perm.degree() {
            return Err(Error::Inconsistent(format!(
                "signs length {} does not match permutation degree {}",
                signs.len(),
                perm.degree()
            )));
        }
        if let Some(&bad) = signs.iter().find(|&&s| s > 1) {
            return Err(Error::Inconsistent(format!(
                "sign entries must be 0 or 1, got {bad}"
            )));
        }
        Ok(GroupElement { signs, perm })
    }

    pub fn genus(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[u8] {
        &self.signs
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.signs.iter().all(|&s| s == 0) && self.perm.is_identity()
    }

    /// Group law. Writing elements as (signs, perm) acting flips-first, the
    /// product (s, σ)·(t, μ) (with (t, μ) acting first) is (u, σ∘μ) where
    /// `u_k = t_k + s_{μ(k)} mod 2`: pushing the flips of `s` past the
    /// relabeling μ re-indexes them by μ.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.genus(), other.genus(), "genus mismatch");
        let perm = self.perm.compose(&other.perm);
        let signs = (0..self.genus())
            .map(|k| (other.signs[k] + self.signs[other.perm.apply(k)]) % 2)
            .collect();
        GroupElement { signs, perm }
    }

    pub fn inverse(&self) -> GroupElement {
        let perm = self.perm.inverse();
        let signs = (0..self.genus()).map(|k| self.signs[perm.apply(k)]).collect();
        GroupElement { signs, perm }
    }

    /// Action on a point of the bouquet: the vertex is fixed by everything; a
    /// point at angle θ on circle `i` goes to angle θ (or 2π−θ when circle
    /// `i` is flipped) on circle `perm(i)`.
    pub fn act(&self, point: GraphPoint) -> GraphPoint {
        match point {
            GraphPoint::Vertex => GraphPoint::Vertex,
            GraphPoint::OnCircle { circle, angle } => {
                let angle = if self.signs[circle] == 1 { TAU - angle } else { angle };
                GraphPoint::OnCircle {
                    circle: self.perm.apply(circle),
                    angle,
                }
            }
        }
    }

    /// Fixed points of this element on circle `i`. A circle sent elsewhere
    /// contributes only the vertex; a circle kept in place is fixed pointwise
    /// when unflipped, and exactly at the vertex and the antipode (angle π)
    /// when flipped.
    pub fn fixed_points_on_circle(&self, i: usize) -> FixedPoints {
        assert!(i < self.genus());
        if self.perm.apply(i) != i {
            FixedPoints::Points(vec![GraphPoint::Vertex])
        } else if self.signs[i] == 0 {
            FixedPoints::All
        } else {
            FixedPoints::Points(vec![
                GraphPoint::Vertex,
                GraphPoint::OnCircle { circle: i, angle: PI },
            ])
        }
    }

    /// Uniformly random element (Fisher–Yates relabeling, fair-coin flips).
    pub fn random(genus: usize, rng: &mut impl rand::Rng) -> GroupElement {
        assert!(genus >= 1);
        let mut images: Vec<usize> = (0..genus).collect();
        for k in (1..genus).rev() {
            let j = rng.random_range(0..=k);
            images.swap(k, j);
        }
        let signs = (0..genus).map(|_| rng.random_range(0..2) as u8).collect();
        GroupElement {
            signs,
            perm: Permutation { images },
        }
    }

    /// All `2^g · g!` elements, relabelings in lexicographic order and flip
    /// subsets in binary counting order within each relabeling.
    pub fn enumerate(genus: usize) -> Result<Vec<GroupElement>> {
        if genus == 0 {
            return Err(Error::Domain("genus must be at least 1".into()));
        }
        if genus > MAX_ENUMERATION_GENUS {
            return Err(Error::Domain(format!(
                "genus {genus} exceeds enumeration cap {MAX_ENUMERATION_GENUS}"
            )));
        }
        let mut out = Vec::with_capacity((1usize << genus) * (1..=genus).product::<usize>());
        for images in (0..genus).permutations(genus) {
            let perm = Permutation { images };
            for mask in 0..(1u32 << genus) {
                let signs = (0..genus).map(|k| ((mask >> k) & 1) as u8).collect();
                out.push(GroupElement {
                    signs,
                    perm: perm.clone(),
                });
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<usize> = self.perm.images().iter().map(|&v| v + 1).collect();
        write!(f, "{{signs {:?}, perm {:?}}}", self.signs, perm)
    }
}

impl TryFrom<ElementDto> for GroupElement {
    type Error = Error;

    fn try_from(dto: ElementDto) -> Result<Self> {
        let images: Vec<usize> = dto
            .perm
            .iter()
            .map(|&v| {
                if v == 0 {
                    Err(Error::Inconsistent(
                        "permutation entries are 1-based; got 0".into(),
                    ))
                } else {
                    Ok(v - 1)
                }
            })
            .collect::<Result<_>>()?;
        GroupElement::new(dto.signs, Permutation::from_images(images)?)
    }
}

impl From<GroupElement> for ElementDto {
    fn from(el: GroupElement) -> Self {
        ElementDto {
            signs: el.signs,
            perm: el.perm.images.iter().map(|&v| v + 1).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(genus: usize) -> Vec<GroupElement> {
        GroupElement::enumerate(genus).unwrap()
    }

    #[test]
    fn enumeration_count_is_pow2_times_factorial() {
        for g in 1..=5 {
            let expected = (1usize << g) * (1..=g).product::<usize>();
            assert_eq!(all(g).len(), expected, "genus {g}");
        }
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        for g in 1..=4 {
            let els = all(g);
            let set: std::collections::HashSet<_> = els.iter().cloned().collect();
            assert_eq!(set.len(), els.len());
        }
    }

    #[test]
    fn genus_zero_and_cap_are_rejected() {
        assert!(GroupElement::enumerate(0).is_err());
        assert!(GroupElement::enumerate(MAX_ENUMERATION_GENUS + 1).is_err());
    }

    #[test]
    fn group_axioms_exhaustive_genus_2() {
        let els = all(2);
        let id = GroupElement::identity(2);
        for a in &els {
            assert_eq!(&a.compose(&id), a);
            assert_eq!(&id.compose(a), a);
            assert_eq!(a.compose(&a.inverse()), id);
            assert_eq!(a.inverse().compose(a), id);
            for b in &els {
                for c in &els {
                    assert_eq!(
                        a.compose(b).compose(c),
                        a.compose(&b.compose(c)),
                        "associativity failed at {a}, {b}, {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_is_two_sided_genus_3() {
        let id = GroupElement::identity(3);
        for a in all(3) {
            assert_eq!(a.compose(&a.inverse()), id);
            assert_eq!(a.inverse().compose(&a), id);
        }
    }

    #[test]
    fn flips_commute_and_are_involutions() {
        let g = 4;
        let id = GroupElement::identity(g);
        for i in 0..g {
            let ri = GroupElement::flip(g, i);
            assert_eq!(ri.compose(&ri), id);
            for j in 0..g {
                let rj = GroupElement::flip(g, j);
                assert_eq!(ri.compose(&rj), rj.compose(&ri));
            }
        }
    }

    /// Conjugating the flip of circle i by a relabeling gives the flip of the
    /// relabeled circle: τ_σ ρ_i τ_σ⁻¹ = ρ_{σ(i)}.
    #[test]
    fn relabeling_conjugates_flips() {
        for g in 2..=5 {
            for images in (0..g).permutations(g) {
                let sigma = GroupElement::relabel(Permutation::from_images(images).unwrap());
                for i in 0..g {
                    let lhs = sigma
                        .compose(&GroupElement::flip(g, i))
                        .compose(&sigma.inverse());
                    let rhs = GroupElement::flip(g, sigma.perm().apply(i));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn swap_conjugation_moves_flip_to_other_circle() {
        let swap = GroupElement::relabel_swap(2, 0, 1);
        let got = swap
            .compose(&GroupElement::flip(2, 0))
            .compose(&swap);
        assert_eq!(got, GroupElement::flip(2, 1));
    }

    #[test]
    fn action_is_compatible_with_composition() {
        let els = all(3);
        let points = [
            GraphPoint::Vertex,
            GraphPoint::on_circle(0, 0.25),
            GraphPoint::on_circle(1, 2.0),
            GraphPoint::on_circle(2, 5.5),
        ];
        for a in &els {
            for b in &els {
                let ab = a.compose(b);
                for p in points {
                    let via_product = ab.act(p);
                    let via_steps = a.act(b.act(p));
                    assert!(
                        via_product.approx_eq(&via_steps, 1e-12),
                        "{a} ∘ {b} on {p:?}: {via_product:?} vs {via_steps:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn action_of_identity_fixes_everything() {
        let id = GroupElement::identity(2);
        let p = GraphPoint::on_circle(1, 1.75);
        assert_eq!(id.act(p), p);
        assert_eq!(id.act(GraphPoint::Vertex), GraphPoint::Vertex);
    }

    #[test]
    fn angle_normalization_collapses_vertex() {
        assert_eq!(GraphPoint::on_circle(0, 0.0), GraphPoint::Vertex);
        assert_eq!(GraphPoint::on_circle(0, TAU), GraphPoint::Vertex);
        assert_eq!(GraphPoint::on_circle(0, -TAU), GraphPoint::Vertex);
        assert_eq!(GraphPoint::on_circle(0, -1e-300), GraphPoint::Vertex);
        match GraphPoint::on_circle(1, -1.0) {
            GraphPoint::OnCircle { circle, angle } => {
                assert_eq!(circle, 1);
                assert!((angle - (TAU - 1.0)).abs() < 1e-15);
            }
            other => panic!("expected a circle point, got {other:?}"),
        }
    }

    #[test]
    fn fixed_points_three_cases() {
        let g = 3;
        // relabeled away: only the vertex
        let swap = GroupElement::relabel_swap(g, 0, 1);
        assert_eq!(
            swap.fixed_points_on_circle(0),
            FixedPoints::Points(vec![GraphPoint::Vertex])
        );
        // untouched circle: fixed pointwise
        assert_eq!(swap.fixed_points_on_circle(2), FixedPoints::All);
        // flipped in place: vertex and the antipode
        let flip = GroupElement::flip(g, 1);
        assert_eq!(
            flip.fixed_points_on_circle(1),
            FixedPoints::Points(vec![
                GraphPoint::Vertex,
                GraphPoint::OnCircle { circle: 1, angle: PI }
            ])
        );
    }

    #[test]
    fn adjacent_factors_reconstruct_every_s4_element() {
        for images in (0..4).permutations(4) {
            let sigma = Permutation::from_images(images).unwrap();
            let product = sigma
                .adjacent_factors()
                .into_iter()
                .fold(Permutation::identity(4), |acc, j| {
                    acc.compose(&Permutation::transposition(4, j, j + 1))
                });
            assert_eq!(product, sigma);
        }
    }

    #[test]
    fn json_round_trip_matches_documented_shape() {
        let el = GroupElement::new(
            vec![0, 1, 0],
            Permutation::from_images(vec![1, 0, 2]).unwrap(),
        )
        .unwrap();
        let json = serde_json::to_string(&el).unwrap();
        assert_eq!(json, r#"{"signs":[0,1,0],"perm":[2,1,3]}"#);
        let back: GroupElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, el);
    }

    #[test]
    fn json_rejects_malformed_elements() {
        for bad in [
            r#"{"signs":[0,0],"perm":[1,1]}"#,    // not a bijection
            r#"{"signs":[0,2],"perm":[1,2]}"#,    // sign out of range
            r#"{"signs":[0],"perm":[1,2]}"#,      // length mismatch
            r#"{"signs":[0,0],"perm":[0,1]}"#,    // 0-based labels in JSON
            r#"{"signs":[0,0],"perm":[1,3]}"#,    // label out of range
        ] {
            assert!(
                serde_json::from_str::<GroupElement>(bad).is_err(),
                "accepted {bad}"
            );
        }
    }
}
