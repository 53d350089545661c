//! One-point compactification of `R^m` as the unit sphere in `R^(m+1)`.
//!
//! The inverse stereographic map sends `x` to the point where the segment
//! from the north pole `(0,…,0,1)` through `(x, 0)` meets the sphere; the
//! origin goes to the south pole and `‖x‖ → ∞` approaches the north pole.
//! An orthogonal map `A` of `R^m` commutes with the lift through its
//! extension by a fixed last coordinate, because the formula depends on `x`
//! only through `Ax` and the invariant `‖x‖²`.

use nalgebra::DVector;

use crate::error::{Error, Result};

/// `x ↦ (2x, ‖x‖² − 1) / (‖x‖² + 1)`, a point of the unit sphere in
/// `R^(m+1)`.
pub fn inverse_stereographic(x: &DVector<f64>) -> DVector<f64> {
    let m = x.len();
    let s = x.norm_squared();
    let scale = 2.0 / (s + 1.0);
    let mut out = DVector::zeros(m + 1);
    out.rows_mut(0, m).copy_from(&(scale * x));
    out[m] = (s - 1.0) / (s + 1.0);
    out
}

/// Projection from the north pole back to `R^m`: defined away from the pole
/// itself.
pub fn stereographic(y: &DVector<f64>) -> Result<DVector<f64>> {
    let m = y.len() - 1;
    let denom = 1.0 - y[m];
    if denom.abs() < 1e-12 {
        return Err(Error::Domain(
            "stereographic projection is undefined at the north pole".into(),
        ));
    }
    Ok(y.rows(0, m).into_owned() / denom)
}
