use thiserror::Error;

/// Crate-wide error type.
///
/// `Domain` marks requests outside supported ranges (genus 0, genus above the
/// enumeration cap, malformed flags). `Inconsistent` marks structurally valid
/// input whose contents contradict each other (a permutation that is not a
/// bijection, a representation whose matrices do not fix the claimed marked
/// points).
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
