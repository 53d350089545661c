//! Equivariant embeddings of a bouquet of `g` circles into spheres.
//!
//! The crate has four layers:
//!
//! * [`symgroup`]: the symmetry group of the bouquet as exact integer data,
//!   with its action on parametrized points.
//! * [`constructions`]: closed-form equivariant embeddings into `R^(2g-1)`
//!   and into the unit sphere `S^(2g-1)`, plus two small hand-built demos
//!   and one-point compactification.
//! * [`verify`]: tolerance-driven numerical checks that an embedding is
//!   what it claims to be (orthogonal matrices, a genuine homomorphism,
//!   equivariance, injectivity, sphere membership).
//! * [`certificate`]: a machine-checkable account of why the ambient
//!   dimension cannot drop below `2g-1`, computed from the embedding
//!   itself (marked-point rank, invariant splitting, simultaneous
//!   diagonalization, GF(2) rank of the resulting sign patterns).

pub mod certificate;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod export;
pub mod gf2;
pub mod io;
pub mod linalg;
pub mod symgroup;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
