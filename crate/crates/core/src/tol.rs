//! Numerical tolerances and sampling defaults shared by the verifier and the
//! certificate pipeline.
//!
//! Each constant is an absolute bound on a residual that would be exactly
//! zero in real arithmetic. The values leave two to three orders of
//! magnitude of headroom over what the closed-form constructions actually
//! produce at genus ≤ 8, so a failure signals a real defect rather than
//! roundoff.

/// Max `‖MᵀM − I‖_∞` for a matrix claimed orthogonal.
pub const ORTHOGONALITY: f64 = 1e-10;

/// Max geometric residual: distance from a sphere, mismatch of mapped
/// sample points, deviation of a circle radius.
pub const GEOMETRY: f64 = 1e-9;

/// Max `‖M(g)M(h) − M(gh)‖_∞` when checking that matrices multiply the way
/// the group elements compose, and the faithfulness margin floor.
pub const HOMOMORPHISM: f64 = 1e-9;

/// Max off-diagonal magnitude after simultaneous diagonalization of a
/// commuting family of involutions.
pub const DIAGONALIZATION: f64 = 1e-8;

/// Singular values below `RANK_RELATIVE * σ_max` do not count toward
/// numerical rank.
pub const RANK_RELATIVE: f64 = 1e-8;

/// Angular radius (radians) around the shared vertex excluded when sampling
/// points that must be distinguished across circles: every circle passes
/// through the vertex, so injectivity across circles can only hold away
/// from it.
pub const VERTEX_EXCLUSION_RADIUS: f64 = 0.1;

/// Minimum separation the injectivity check demands between sampled points
/// that the parametrization keeps distinct.
pub const INJECTIVITY_MARGIN: f64 = 1e-6;

/// Default number of sample angles per circle for randomized checks.
pub const DEFAULT_SAMPLES: usize = 256;

/// Default RNG seed for randomized checks; overridable per run.
pub const DEFAULT_SEED: u64 = 0x5EED;
