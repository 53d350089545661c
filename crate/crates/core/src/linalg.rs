//! Small dense linear-algebra helpers shared by the constructions, the
//! verifier, and the certificate pipeline.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::symgroup::Permutation;

/// `‖MᵀM − I‖_∞`; zero exactly when `M` has orthonormal columns.
pub fn orthogonality_residual(m: &DMatrix<f64>) -> f64 {
    let gram = m.transpose() * m;
    let n = gram.nrows();
    (gram - DMatrix::<f64>::identity(n, n)).amax()
}

/// Eigenvectors of a symmetric matrix whose eigenvalue exceeds the threshold
/// computed by `threshold(λ_max)` (with λ_max clamped to 0), as columns
/// ordered by descending eigenvalue. Subspace extraction goes through the
/// symmetric eigendecomposition throughout this crate: it is substantially
/// more accurate than the general SVD on the (symmetric) Gram and projector
/// matrices that arise here.
fn symmetric_eigenbasis_above(
    sym: DMatrix<f64>,
    threshold: impl FnOnce(f64) -> f64,
) -> DMatrix<f64> {
    let n = sym.nrows();
    let eig = sym.symmetric_eigen();
    let max = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b));
    let cut = threshold(max);
    let mut kept: Vec<(f64, usize)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > cut)
        .map(|(c, &l)| (l, c))
        .collect();
    kept.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut out = DMatrix::<f64>::zeros(n, kept.len());
    for (k, (_, c)) in kept.iter().enumerate() {
        out.set_column(k, &eig.eigenvectors.column(*c));
    }
    out
}

/// Number of diagonal entries of the column-pivoted QR factor above
/// `rel_tol` times the largest; pivoting makes the magnitudes
/// non-increasing, so this counts directions genuinely present in the
/// column space.
pub fn numerical_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    qr_rank(&m.clone().col_piv_qr().r(), rel_tol)
}

/// Orthonormal basis of the column space: the first `rank` columns of the
/// column-pivoted QR factor Q. Returns an `n × r` matrix with orthonormal
/// columns (zero columns for the zero matrix).
pub fn orthonormal_range_basis(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let qr = m.clone().col_piv_qr();
    let rank = qr_rank(&qr.r(), rel_tol);
    qr.q().columns(0, rank).into_owned()
}

fn qr_rank(r: &DMatrix<f64>, rel_tol: f64) -> usize {
    let diag: Vec<f64> = r.diagonal().iter().map(|d| d.abs()).collect();
    let max = diag.iter().fold(0.0f64, |a, &b| a.max(b));
    if max == 0.0 {
        return 0;
    }
    diag.iter().take_while(|&&d| d > rel_tol * max).count()
}

/// Orthonormal basis of the orthogonal complement of the column span of
/// `basis` (which must itself have orthonormal columns). Computed from the
/// projector `I − B Bᵀ`, whose eigenvalues are all 0 or 1, so the split is
/// decided at 0.5 and needs no tolerance input.
pub fn orthogonal_complement_basis(basis: &DMatrix<f64>) -> DMatrix<f64> {
    let n = basis.nrows();
    let projector = DMatrix::<f64>::identity(n, n) - basis * basis.transpose();
    symmetric_eigenbasis_above(projector, |_| 0.5)
}

/// Block-diagonal assembly of two square matrices.
pub fn block_diag(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    assert!(a.is_square() && b.is_square());
    let (na, nb) = (a.nrows(), b.nrows());
    let mut out = DMatrix::<f64>::zeros(na + nb, na + nb);
    out.view_mut((0, 0), (na, na)).copy_from(a);
    out.view_mut((na, na), (nb, nb)).copy_from(b);
    out
}

/// The `n × n` 0/1 matrix sending basis vector `e_k` to `e_{perm(k)}`.
pub fn permutation_matrix(perm: &Permutation) -> DMatrix<f64> {
    let n = perm.degree();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        m[(perm.apply(k), k)] = 1.0;
    }
    m
}

/// One draw from the standard normal distribution (Box–Muller).
pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

/// Random `n × n` orthogonal matrix: QR of a standard-normal matrix with the
/// signs of Q's columns pinned by the sign of R's diagonal, which makes the
/// draw a well-defined function of the Gaussian sample.
pub fn random_orthogonal(n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let gaussian = DMatrix::from_fn(n, n, |_, _| standard_normal(rng));
    let qr = gaussian.qr();
    let r_diag: Vec<f64> = (0..n).map(|j| qr.r()[(j, j)]).collect();
    let mut q = qr.q();
    for (j, d) in r_diag.iter().enumerate() {
        if *d < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Random unit vector in `R^n`.
pub fn random_unit_vector(n: usize, rng: &mut impl Rng) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| standard_normal(rng));
        let norm = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}
