//! Tolerance-driven checks that an embedded bouquet is what it claims to be.
//!
//! Every check produces a [`CheckReport`] with the worst residual it saw and
//! a witness describing where. Residuals compare against an explicit
//! tolerance; checks whose healthy state is a *large* value (injectivity
//! margin, faithfulness separation) report the negated margin so that
//! "residual ≤ tolerance" reads the same way everywhere.

use std::collections::HashMap;
use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::theta::{ThetaGraph, ThetaPoint, MERIDIANS};
use crate::constructions::{EmbeddedBouquet, PostMap, Representation};
use crate::error::{Error, Result};
use crate::linalg::orthogonality_residual;
use crate::symgroup::{GraphPoint, GroupElement, Permutation, MAX_ENUMERATION_GENUS};
use crate::tol;

/// Outcome of one check: `pass` holds exactly when `residual ≤` the
/// tolerance the check ran with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    pub residual: f64,
    pub witness: Option<String>,
}

impl CheckReport {
    fn new(check: &str, residual: f64, tol: f64, witness: Option<String>) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            pass: residual <= tol,
            residual,
            witness,
        }
    }
}

/// True when every report passed.
pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Sample angles per circle: half a uniform grid, half seeded-uniform.
    pub samples: usize,
    pub seed: u64,
    pub tol_geom: f64,
    pub tol_orth: f64,
    pub tol_hom: f64,
    /// Angular neighborhood of the vertex excluded from cross-circle
    /// injectivity comparisons.
    pub exclusion_radius: f64,
    /// Smallest acceptable distance between points that must stay distinct.
    pub injectivity_margin: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: tol::DEFAULT_SAMPLES,
            seed: tol::DEFAULT_SEED,
            tol_geom: tol::GEOMETRY,
            tol_orth: tol::ORTHOGONALITY,
            tol_hom: tol::HOMOMORPHISM,
            exclusion_radius: tol::VERTEX_EXCLUSION_RADIUS,
            injectivity_margin: tol::INJECTIVITY_MARGIN,
        }
    }
}

/// Sample angles in `(0, 2π)`: a uniform grid for coverage plus seeded
/// uniform draws so no structural accident can hide between grid points.
fn sample_angles(samples: usize, rng: &mut impl Rng) -> Vec<f64> {
    let n_grid = samples.div_ceil(2);
    let mut angles: Vec<f64> = (0..n_grid)
        .map(|k| TAU * (k + 1) as f64 / (n_grid + 1) as f64)
        .collect();
    while angles.len() < samples {
        angles.push(rng.random_range(f64::MIN_POSITIVE..TAU));
    }
    angles
}

/// The group generators an embedding must represent: every single-circle
/// flip and every adjacent relabeling.
fn generators(genus: usize) -> Vec<GroupElement> {
    let mut gens: Vec<GroupElement> = (0..genus).map(|i| GroupElement::flip(genus, i)).collect();
    gens.extend((0..genus - 1).map(|j| GroupElement::relabel_swap(genus, j, j + 1)));
    gens
}

/// Matrices of all group elements, computing each relabeling matrix once
/// (enumeration yields flip subsets grouped by permutation).
fn all_element_matrices(
    rep: &Representation,
) -> Result<Vec<(GroupElement, DMatrix<f64>)>> {
    let els = GroupElement::enumerate(rep.genus())?;
    let mut out = Vec::with_capacity(els.len());
    let mut cached: Option<(Permutation, DMatrix<f64>)> = None;
    for el in els {
        let tau = match &cached {
            Some((p, t)) if p == el.perm() => t.clone(),
            _ => {
                let t = rep.tau_of(el.perm());
                cached = Some((el.perm().clone(), t.clone()));
                t
            }
        };
        let mut m = tau;
        for (i, &s) in el.signs().iter().enumerate() {
            if s == 1 {
                m *= rep.rho(i);
            }
        }
        out.push((el, m));
    }
    Ok(out)
}

/// Worst `‖M(el)·x − eval(el·p)‖_∞` over the given points.
pub fn equivariance_residual(
    bouquet: &EmbeddedBouquet,
    el: &GroupElement,
    points: &[GraphPoint],
) -> f64 {
    let m = bouquet.representation().matrix_of(el);
    points
        .iter()
        .map(|&p| {
            let lhs = &m * bouquet.eval(p);
            let rhs = bouquet.eval(el.act(p));
            (lhs - rhs).amax()
        })
        .fold(0.0, f64::max)
}

/// Each circle must be round and nondegenerate: axes of equal positive
/// length, orthogonal to each other.
pub fn check_circle_geometry(bouquet: &EmbeddedBouquet, opts: &VerifyOptions) -> CheckReport {
    let mut worst = 0.0f64;
    let mut witness = None;
    for (i, c) in bouquet.circles().iter().enumerate() {
        let ru = c.axis_u.norm();
        let rw = c.axis_w.norm();
        let skew = c.axis_u.dot(&c.axis_w).abs();
        let degenerate = if ru < opts.tol_geom { 1.0 } else { 0.0 };
        let local = (ru - rw).abs().max(skew).max(degenerate);
        if local > worst {
            worst = local;
            witness = Some(format!(
                "circle {i}: |u| = {ru:.6e}, |w| = {rw:.6e}, u·w = {skew:.6e}"
            ));
        }
    }
    CheckReport::new("circle_geometry", worst, opts.tol_geom, witness)
}

/// All circles must meet at one vertex: their θ = 0 points agree.
pub fn check_vertex_consistency(bouquet: &EmbeddedBouquet, opts: &VerifyOptions) -> CheckReport {
    let v0 = bouquet.circles()[0].eval(0.0);
    let mut worst = 0.0f64;
    let mut witness = None;
    for (i, c) in bouquet.circles().iter().enumerate().skip(1) {
        let d = (c.eval(0.0) - &v0).amax();
        if d > worst {
            worst = d;
            witness = Some(format!("circle {i} misses circle 0's base point by {d:.3e}"));
        }
    }
    CheckReport::new("vertex_consistency", worst, opts.tol_geom, witness)
}

/// Every generator matrix must be orthogonal; products then are too.
pub fn check_orthogonality(bouquet: &EmbeddedBouquet, opts: &VerifyOptions) -> CheckReport {
    let rep = bouquet.representation();
    let mut worst = 0.0f64;
    let mut witness = None;
    for (label, m) in (0..rep.genus())
        .map(|i| (format!("flip {}", i + 1), rep.rho(i)))
        .chain(
            (0..rep.genus() - 1)
                .map(|j| (format!("relabeling ({} {})", j + 1, j + 2), rep.tau_adjacent(j))),
        )
    {
        let r = orthogonality_residual(m);
        if r > worst {
            worst = r;
            witness = Some(format!("{label}: ‖MᵀM − I‖_∞ = {r:.3e}"));
        }
    }
    CheckReport::new("orthogonality", worst, opts.tol_orth, witness)
}

/// Matrices must multiply the way elements compose. Exhaustive over all
/// pairs up to genus 4; seeded random pairs (at least 10⁴) beyond that.
pub fn check_homomorphism(bouquet: &EmbeddedBouquet, opts: &VerifyOptions) -> Result<CheckReport> {
    let rep = bouquet.representation();
    let genus = bouquet.genus();
    let mut worst = 0.0f64;
    let mut witness = None;

    if genus <= 4 {
        let mats = all_element_matrices(rep)?;
        let index: HashMap<&GroupElement, usize> =
            mats.iter().enumerate().map(|(k, (el, _))| (el, k)).collect();
        for (a, ma) in &mats {
            for (b, mb) in &mats {
                let ab = a.compose(b);
                let mab = &mats[index[&ab]].1;
                let r = (ma * mb - mab).amax();
                if r > worst {
                    worst = r;
                    witness = Some(format!("pair {a}, {b}: residual {r:.3e}"));
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..10_000 {
            let a = GroupElement::random(genus, &mut rng);
            let b = GroupElement::random(genus, &mut rng);
            let r = (rep.matrix_of(&a) * rep.matrix_of(&b) - rep.matrix_of(&a.compose(&b))).amax();
            if r > worst {
                worst = r;
                witness = Some(format!("pair {a}, {b}: residual {r:.3e}"));
            }
        }
    }
    Ok(CheckReport::new("homomorphism", worst, opts.tol_hom, witness))
}

/// No element other than the identity may be represented by (nearly) the
/// identity matrix. Reports the negated separation, so more negative is
/// healthier; exhaustive over the whole group.
pub fn check_faithfulness(bouquet: &EmbeddedBouquet, opts: &VerifyOptions) -> Result<CheckReport> {
    let rep = bouquet.representation();
    let id = DMatrix::<f64>::identity(rep.dim(), rep.dim());
    let mut min_sep = f64::INFINITY;
    let mut witness = None;
    for (el, m) in all_element_matrices(rep)? {
        if el.is_identity() {
            continue;
        }
        let sep = (m - &id).amax();
        if sep < min_sep {
            min_sep = sep;
            witness = Some(format!("closest to identity: {el}, ‖M − I‖_∞ = {sep:.3e}"));
        }
    }
    Ok(CheckReport::new(
        "faithfulness",
        -min_sep,
        -opts.tol_hom,
        witness,
    ))
}

/// Matrices must move embedded points exactly as the elements move abstract
/// points, across every generator, every circle, and the vertex.
pub fn check_equivariance(bouquet: &EmbeddedBouquet, opts: &VerifyOptions) -> CheckReport {
    let genus = bouquet.genus();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut points = vec![GraphPoint::Vertex];
    for i in 0..genus {
        for a in sample_angles(opts.samples, &mut rng) {
            points.push(GraphPoint::on_circle(i, a));
        }
    }
    let mut worst = 0.0f64;
    let mut witness = None;
    for gen in generators(genus) {
        let r = equivariance_residual(bouquet, &gen, &points);
        if r > worst {
            worst = r;
            witness = Some(format!("generator {gen}: residual {r:.3e}"));
        }
    }
    CheckReport::new("equivariance", worst, opts.tol_geom, witness)
}

/// Sampled points that the parametrization keeps distinct must stay apart.
/// Within one circle the margin is scale-free: chord distance divided by
/// the parameter-circle chord `2|sin(Δθ/2)|`, which sits near the radius
/// for sound axes and collapses when they degenerate (so nearby angles
/// mapping nearby never count against the margin). Across circles the
/// margin is the raw distance, with both angles outside the exclusion ball
/// around the shared vertex. Reports the negated combined margin.
pub fn check_injectivity(bouquet: &EmbeddedBouquet, opts: &VerifyOptions) -> CheckReport {
    let genus = bouquet.genus();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x1);
    let mut margin = f64::INFINITY;
    let mut witness = None;

    let per_circle: Vec<Vec<(f64, DVector<f64>)>> = (0..genus)
        .map(|i| {
            sample_angles(opts.samples, &mut rng)
                .into_iter()
                .map(|a| (a, bouquet.eval(GraphPoint::on_circle(i, a))))
                .collect()
        })
        .collect();

    for (i, samples) in per_circle.iter().enumerate() {
        for (k, (a1, p1)) in samples.iter().enumerate() {
            for (a2, p2) in &samples[k + 1..] {
                let denom = 2.0 * ((a1 - a2) * 0.5).sin().abs();
                if denom < 1e-9 {
                    continue;
                }
                let ratio = (p1 - p2).norm() / denom;
                if ratio < margin {
                    margin = ratio;
                    witness = Some(format!(
                        "circle {i}: angles {a1:.6} and {a2:.6}, chord ratio {ratio:.3e}"
                    ));
                }
            }
        }
    }

    let interior = |a: f64| a > opts.exclusion_radius && a < TAU - opts.exclusion_radius;
    for i in 0..genus {
        for j in 0..i {
            for (a1, p1) in per_circle[i].iter().filter(|(a, _)| interior(*a)) {
                for (a2, p2) in per_circle[j].iter().filter(|(a, _)| interior(*a)) {
                    let d = (p1 - p2).norm();
                    if d < margin {
                        margin = d;
                        witness = Some(format!(
                            "circles {i} and {j}: angles {a1:.6} and {a2:.6} map {d:.3e} apart"
                        ));
                    }
                }
            }
        }
    }

    CheckReport::new(
        "injectivity",
        -margin,
        -opts.injectivity_margin,
        witness,
    )
}

/// Every embedded point must sit on the unit sphere.
pub fn check_on_sphere(bouquet: &EmbeddedBouquet, opts: &VerifyOptions) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x2);
    let mut worst = (bouquet.vertex().norm() - 1.0).abs();
    let mut witness = Some("vertex".to_string());
    for i in 0..bouquet.genus() {
        for a in sample_angles(opts.samples, &mut rng) {
            let r = (bouquet.eval(GraphPoint::on_circle(i, a)).norm() - 1.0).abs();
            if r > worst {
                worst = r;
                witness = Some(format!("circle {i} at angle {a:.6}"));
            }
        }
    }
    CheckReport::new("on_sphere", worst, opts.tol_geom, witness)
}

/// Runs the whole suite. The sphere-membership check is skipped (reported
/// as passing, with a note) for flat embeddings, recognized by having no
/// post map and the vertex at the origin, where no sphere claim is being
/// made.
pub fn verify_all(bouquet: &EmbeddedBouquet, opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    if bouquet.genus() > MAX_ENUMERATION_GENUS {
        return Err(Error::Domain(format!(
            "verification enumerates the symmetry group and supports genus ≤ {MAX_ENUMERATION_GENUS}, got {}",
            bouquet.genus()
        )));
    }
    let mut reports = vec![
        check_circle_geometry(bouquet, opts),
        check_vertex_consistency(bouquet, opts),
        check_orthogonality(bouquet, opts),
        check_homomorphism(bouquet, opts)?,
        check_faithfulness(bouquet, opts)?,
        check_equivariance(bouquet, opts),
        check_injectivity(bouquet, opts),
    ];
    let flat = bouquet.post_map() == PostMap::None && bouquet.vertex().norm() <= opts.tol_geom;
    if flat {
        reports.push(CheckReport {
            check: "on_sphere".to_string(),
            pass: true,
            residual: 0.0,
            witness: Some(
                "flat embedding (no post map, vertex at the origin); no sphere claim to check"
                    .to_string(),
            ),
        });
    } else {
        reports.push(check_on_sphere(bouquet, opts));
    }
    Ok(reports)
}

/// Check suite for the theta-graph demo: the 12 matrices must be orthogonal,
/// pairwise distinct, multiply like the elements, and move arc points and
/// poles the way the elements do.
pub fn verify_theta(theta: &ThetaGraph, opts: &VerifyOptions) -> Vec<CheckReport> {
    let els = theta.elements();

    let mut worst = 0.0f64;
    let mut witness = None;
    for (el, m) in els.iter().zip(theta.matrices()) {
        let r = orthogonality_residual(m);
        if r > worst {
            worst = r;
            witness = Some(format!("element {el}"));
        }
    }
    let orth = CheckReport::new("orthogonality", worst, opts.tol_orth, witness);

    let mut worst = 0.0f64;
    let mut witness = None;
    for a in &els {
        for b in &els {
            let r = (theta.matrix_of(a) * theta.matrix_of(b) - theta.matrix_of(&a.compose(b)))
                .amax();
            if r > worst {
                worst = r;
                witness = Some(format!("pair {a}, {b}"));
            }
        }
    }
    let hom = CheckReport::new("homomorphism", worst, opts.tol_hom, witness);

    let mut min_sep = f64::INFINITY;
    let mut witness = None;
    for (k, a) in els.iter().enumerate() {
        for (l, b) in els.iter().enumerate() {
            if k == l {
                continue;
            }
            let sep = (theta.matrix_of(a) - theta.matrix_of(b)).amax();
            if sep < min_sep {
                min_sep = sep;
                witness = Some(format!("elements {a} and {b} differ by {sep:.3e}"));
            }
        }
    }
    let distinct = CheckReport::new("faithfulness", -min_sep, -opts.tol_hom, witness);

    let mut points = vec![ThetaPoint::NorthPole, ThetaPoint::SouthPole];
    for arc in 0..MERIDIANS {
        for k in 1..=opts.samples.min(64) {
            points.push(
                ThetaPoint::on_arc(arc, k as f64 / (opts.samples.min(64) + 1) as f64)
                    .expect("interior parameter"),
            );
        }
    }
    let mut worst = 0.0f64;
    let mut witness = None;
    for el in &els {
        for &p in &points {
            let r = (theta.matrix_of(el) * theta.eval(p) - theta.eval(el.act(p))).amax();
            if r > worst {
                worst = r;
                witness = Some(format!("element {el} at {p:?}"));
            }
        }
    }
    let equiv = CheckReport::new("equivariance", worst, opts.tol_geom, witness);

    let mut worst = 0.0f64;
    for &p in &points {
        worst = worst.max((theta.eval(p).norm() - 1.0).abs());
    }
    let sphere = CheckReport::new("on_sphere", worst, opts.tol_geom, None);

    vec![orth, hom, distinct, equiv, sphere]
}
