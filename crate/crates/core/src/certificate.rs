//! A machine-checkable account of why an equivariantly embedded bouquet of
//! `g` circles forces ambient sphere dimension `n ≥ 2g − 1`.
//!
//! The argument, computed directly from the embedding:
//!
//! 1. The vertex image `v` and the far points `p_i` (angle π on circle `i`)
//!    are each fixed by every circle flip, so `V = span{v, p_0, …, p_(g-1)}`
//!    is a subspace the flips act on trivially. `v` together with any
//!    `g − 1` of the far points is linearly independent, so `dim V = g`.
//! 2. The flips preserve the orthogonal complement `V^⊥` and restrict to
//!    commuting orthogonal involutions there. Simultaneously diagonalizing
//!    them assigns each flip a ±1 sign pattern over a common eigenbasis.
//! 3. The patterns, read as GF(2) rows, have rank `g` exactly when the flip
//!    group acts faithfully on `V^⊥`, which forces `dim V^⊥ ≥ g`.
//! 4. Then `n + 1 = dim V + dim V^⊥ ≥ 2g`.
//!
//! Every step carries its numerical residual, so the final `holds` flag is
//! auditable rather than asserted.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::constructions::EmbeddedBouquet;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::linalg::{numerical_rank, orthogonal_complement_basis, orthogonality_residual, orthonormal_range_basis};
use crate::symgroup::GraphPoint;
use crate::tol;

/// The distinguished points the bound argument is built from.
#[derive(Debug, Clone)]
pub struct MarkedPoints {
    /// Image of the shared vertex.
    pub vertex: DVector<f64>,
    /// `far[i]` is the image of angle π on circle `i`, the second fixed
    /// point of flip `i`.
    pub far: Vec<DVector<f64>>,
}

/// Extracts the marked points and the worst violation of their defining
/// property: every flip matrix must fix the vertex and every far point.
pub fn extract_marked_points(bouquet: &EmbeddedBouquet) -> (MarkedPoints, f64) {
    let genus = bouquet.genus();
    let vertex = bouquet.vertex();
    let far: Vec<DVector<f64>> = (0..genus)
        .map(|i| bouquet.eval(GraphPoint::on_circle(i, PI)))
        .collect();
    let rep = bouquet.representation();
    let mut residual = 0.0f64;
    for i in 0..genus {
        let r = rep.rho(i);
        residual = residual.max((r * &vertex - &vertex).amax());
        for p in &far {
            residual = residual.max((r * p - p).amax());
        }
    }
    (MarkedPoints { vertex, far }, residual)
}

/// Result of simultaneously diagonalizing a commuting family of orthogonal
/// involutions.
#[derive(Debug, Clone)]
pub struct SimultaneousDiagonalization {
    /// Orthonormal common eigenbasis, one column per dimension, ordered by
    /// sign pattern (patterns read as integers, matrix 0 the low bit,
    /// all-plus first).
    pub basis: DMatrix<f64>,
    /// `patterns[i][c] = 1` exactly when matrix `i` negates basis column
    /// `c`.
    pub patterns: Vec<Vec<u8>>,
    /// Worst deviation from perfect joint diagonality: off-diagonal
    /// magnitude, distance of diagonal entries from ±1, and basis
    /// orthonormality defect.
    pub residual: f64,
}

/// Orthonormal basis of the range of a symmetric matrix whose eigenvalues
/// are (numerically) only 0 or 1, split at the scale-free threshold 1/2.
/// Goes through the symmetric eigendecomposition: the general SVD loses
/// several digits on near-degenerate projectors.
fn projector_range_basis(p: &DMatrix<f64>) -> DMatrix<f64> {
    let n = p.nrows();
    let eig = p.clone().symmetric_eigen();
    let kept: Vec<usize> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 0.5)
        .map(|(c, _)| c)
        .collect();
    let mut out = DMatrix::<f64>::zeros(n, kept.len());
    for (k, c) in kept.iter().enumerate() {
        out.set_column(k, &eig.eigenvectors.column(*c));
    }
    out
}

/// Splits space into the common eigenspaces of a commuting family of
/// orthogonal involutions by intersecting ± eigenspaces one matrix at a
/// time: within an invariant subspace with orthonormal basis `U`, the
/// restriction `A = UᵀMU` is a symmetric involution, so `(I ± A)/2` are
/// orthogonal projectors and their ranges refine the subspace.
///
/// Fails with `Inconsistent` when the input is not a commuting family of
/// orthogonal involutions to within `tol_structure`.
pub fn simultaneous_diagonalize(
    mats: &[DMatrix<f64>],
    tol_structure: f64,
) -> Result<SimultaneousDiagonalization> {
    if mats.len() > 64 {
        return Err(Error::Domain(
            "sign patterns are indexed by u64; at most 64 matrices supported".into(),
        ));
    }
    let n = mats.first().map_or(0, |m| m.nrows());
    for (i, m) in mats.iter().enumerate() {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::Inconsistent(format!(
                "matrix {i} is {}×{}, expected {n}×{n}",
                m.nrows(),
                m.ncols()
            )));
        }
        let involution = (m * m - DMatrix::<f64>::identity(n, n)).amax();
        let symmetric = (m - m.transpose()).amax();
        if involution > tol_structure || symmetric > tol_structure {
            return Err(Error::Inconsistent(format!(
                "matrix {i} is not a symmetric involution (‖M²−I‖ = {involution:.3e}, ‖M−Mᵀ‖ = {symmetric:.3e})"
            )));
        }
        for (j, other) in mats.iter().enumerate().take(i) {
            let comm = (m * other - other * m).amax();
            if comm > tol_structure {
                return Err(Error::Inconsistent(format!(
                    "matrices {j} and {i} do not commute (‖AB−BA‖ = {comm:.3e})"
                )));
            }
        }
    }

    if n == 0 {
        return Ok(SimultaneousDiagonalization {
            basis: DMatrix::zeros(0, 0),
            patterns: vec![vec![]; mats.len()],
            residual: 0.0,
        });
    }

    let mut blocks: Vec<DMatrix<f64>> = vec![DMatrix::identity(n, n)];
    for (i, m) in mats.iter().enumerate() {
        let mut refined = Vec::with_capacity(blocks.len() * 2);
        for u in &blocks {
            let k = u.ncols();
            let a = u.transpose() * m * u;
            let id = DMatrix::<f64>::identity(k, k);
            let plus = projector_range_basis(&((&a + &id) * 0.5));
            let minus = projector_range_basis(&((&id - &a) * 0.5));
            if plus.ncols() + minus.ncols() != k {
                return Err(Error::Inconsistent(format!(
                    "eigenspaces of matrix {i} split a {k}-dimensional block into {} + {}",
                    plus.ncols(),
                    minus.ncols()
                )));
            }
            if plus.ncols() > 0 {
                refined.push(u * plus);
            }
            if minus.ncols() > 0 {
                refined.push(u * minus);
            }
        }
        blocks = refined;
    }

    // Sign pattern of each block by Rayleigh quotient of its first column,
    // then order blocks by pattern for a canonical basis.
    let mut tagged: Vec<(u64, DMatrix<f64>)> = blocks
        .into_iter()
        .map(|u| {
            let q = u.column(0);
            let mut bits = 0u64;
            for (i, m) in mats.iter().enumerate() {
                let lambda = (q.transpose() * m * q)[(0, 0)];
                if lambda < 0.0 {
                    bits |= 1 << i;
                }
            }
            (bits, u)
        })
        .collect();
    tagged.sort_by_key(|(bits, _)| *bits);

    let mut basis = DMatrix::<f64>::zeros(n, n);
    let mut patterns = vec![vec![0u8; n]; mats.len()];
    let mut col = 0;
    for (bits, u) in &tagged {
        for c in 0..u.ncols() {
            basis.set_column(col, &u.column(c));
            for (i, row) in patterns.iter_mut().enumerate() {
                row[col] = ((bits >> i) & 1) as u8;
            }
            col += 1;
        }
    }
    debug_assert_eq!(col, n);

    let mut residual = orthogonality_residual(&basis);
    for (i, m) in mats.iter().enumerate() {
        let d = basis.transpose() * m * &basis;
        for r in 0..n {
            for c in 0..n {
                if r == c {
                    let expected = if patterns[i][c] == 1 { -1.0 } else { 1.0 };
                    residual = residual.max((d[(r, c)] - expected).abs());
                } else {
                    residual = residual.max(d[(r, c)].abs());
                }
            }
        }
    }

    Ok(SimultaneousDiagonalization {
        basis,
        patterns,
        residual,
    })
}

/// One verified stage of the bound computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub step: String,
    pub ok: bool,
    pub detail: String,
}

/// The assembled certificate. `holds` is true exactly when every step
/// verified, in which case `ambient_dim ≥ 2·genus`, i.e. the sphere
/// dimension `n = ambient_dim − 1` satisfies the bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub ambient_dim: usize,
    pub genus: usize,
    pub rank_marked: usize,
    #[serde(rename = "dim_V")]
    pub dim_v: usize,
    #[serde(rename = "dim_V_perp")]
    pub dim_v_perp: usize,
    pub gf2_rank: usize,
    pub bound: String,
    pub holds: bool,
    pub steps: Vec<StepReport>,
}

pub fn certify(bouquet: &EmbeddedBouquet) -> Result<CertificateReport> {
    let genus = bouquet.genus();
    let ambient = bouquet.ambient_dim();
    let mut steps = Vec::new();

    let (marked, fix_residual) = extract_marked_points(bouquet);
    if fix_residual > tol::GEOMETRY {
        return Err(Error::Inconsistent(format!(
            "circle flips move the marked points by {fix_residual:.3e}; \
             this is not an equivariant bouquet embedding"
        )));
    }
    steps.push(StepReport {
        step: "marked_points".into(),
        ok: true,
        detail: format!(
            "vertex and {genus} far points extracted; worst flip-fixedness residual {fix_residual:.3e}"
        ),
    });

    // v together with all far points but the last: g columns
    let mut head_cols = vec![marked.vertex.clone()];
    head_cols.extend(marked.far[..genus - 1].iter().cloned());
    let rank_marked = numerical_rank(&DMatrix::from_columns(&head_cols), tol::RANK_RELATIVE);
    let head_desc = if genus == 1 {
        "[vertex]".to_string()
    } else {
        format!("[vertex, far_1 .. far_{}]", genus - 1)
    };
    steps.push(StepReport {
        step: "rank_marked".into(),
        ok: rank_marked == genus,
        detail: format!("rank of {head_desc} = {rank_marked}, need {genus}"),
    });

    let mut all_cols = vec![marked.vertex.clone()];
    all_cols.extend(marked.far.iter().cloned());
    let v_basis = orthonormal_range_basis(
        &DMatrix::from_columns(&all_cols),
        tol::RANK_RELATIVE,
    );
    let dim_v = v_basis.ncols();
    let perp_basis = orthogonal_complement_basis(&v_basis);
    let dim_v_perp = perp_basis.ncols();
    steps.push(StepReport {
        step: "invariant_split".into(),
        ok: dim_v + dim_v_perp == ambient,
        detail: format!("dim V = {dim_v}, dim V^perp = {dim_v_perp}, ambient = {ambient}"),
    });

    let rep = bouquet.representation();
    let mut fix_span = 0.0f64;
    let mut preserve_perp = 0.0f64;
    for i in 0..genus {
        let r = rep.rho(i);
        fix_span = fix_span.max((r * &v_basis - &v_basis).amax());
        preserve_perp = preserve_perp.max((v_basis.transpose() * r * &perp_basis).amax());
    }
    steps.push(StepReport {
        step: "flips_fix_marked_span".into(),
        ok: fix_span <= tol::HOMOMORPHISM,
        detail: format!("worst ‖R·V − V‖ over flips = {fix_span:.3e}"),
    });
    steps.push(StepReport {
        step: "flips_preserve_complement".into(),
        ok: preserve_perp <= tol::HOMOMORPHISM,
        detail: format!("worst coupling of V^perp back into V = {preserve_perp:.3e}"),
    });

    let restricted: Vec<DMatrix<f64>> = (0..genus)
        .map(|i| perp_basis.transpose() * rep.rho(i) * &perp_basis)
        .collect();
    let sim = simultaneous_diagonalize(&restricted, tol::DIAGONALIZATION)?;
    steps.push(StepReport {
        step: "simultaneous_diagonalization".into(),
        ok: sim.residual <= tol::DIAGONALIZATION,
        detail: format!(
            "flips restricted to V^perp jointly diagonalized; residual {:.3e}",
            sim.residual
        ),
    });

    let gf2_rank = BitMatrix::from_bits(&sim.patterns).rank();
    steps.push(StepReport {
        step: "flip_patterns_independent".into(),
        ok: gf2_rank == genus,
        detail: format!(
            "GF(2) rank of the {genus} sign patterns over {dim_v_perp} eigendirections = {gf2_rank}"
        ),
    });

    steps.push(StepReport {
        step: "dimension_bound".into(),
        ok: ambient >= 2 * genus,
        detail: format!(
            "ambient {ambient} = dim V + dim V^perp ≥ 2·{genus} requires the sphere dimension n = {} ≥ {}",
            ambient - 1,
            2 * genus - 1
        ),
    });

    let holds = steps.iter().all(|s| s.ok);
    Ok(CertificateReport {
        ambient_dim: ambient,
        genus,
        rank_marked,
        dim_v,
        dim_v_perp,
        gf2_rank,
        bound: "n >= 2g-1".into(),
        holds,
        steps,
    })
}
