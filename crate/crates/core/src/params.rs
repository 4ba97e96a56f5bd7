//! The `(r, k, q)` parameter triple and its validity constraints.
//!
//! A triple fixes the forbidden configurations: in an `r`-uniform
//! hypergraph, every selection of at most `k` edges must cover at least
//! `|S| - q` vertices. `q` may be negative; `q = 0` is the batch-code
//! case.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Validated `(r, k, q)` parameters.
///
/// Construct through [`ParamTriple::new`] (or [`validate_params`]); the
/// constraints below hold for every value of this type:
///
/// * `r >= 2` — uniformity 1 makes the problem trivial,
/// * `q >= -r + 1` — at `q <= -r` a single edge is already forbidden and
///   the maximum edge count is 0,
/// * `k >= q + r + 1` — smaller `k` forbids nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamTriple {
    r: usize,
    k: usize,
    q: i64,
}

/// Constraint violations reported by [`validate_params`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("uniformity r = {r} is too small; r >= 2 required")]
    UniformityTooSmall { r: usize },
    /// At `q <= -r` every single edge is a forbidden configuration, so
    /// the extremal value is 0 for all n; the message carries that fact.
    #[error("q = {q} <= -r = {}; every single edge is forbidden and the extremal edge count is 0", -(*.r as i64))]
    QTooSmall { r: usize, q: i64 },
    #[error("k = {k} is too small; k >= q + r + 1 = {min} required")]
    KTooSmall { k: usize, min: i64 },
}

impl ParamTriple {
    pub fn new(r: usize, k: usize, q: i64) -> Result<Self, ParamError> {
        if r < 2 {
            return Err(ParamError::UniformityTooSmall { r });
        }
        if q <= -(r as i64) {
            return Err(ParamError::QTooSmall { r, q });
        }
        let min_k = q + r as i64 + 1;
        if (k as i64) < min_k {
            return Err(ParamError::KTooSmall { k, min: min_k });
        }
        Ok(ParamTriple { r, k, q })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Vertex count of the largest realizable forbidden configuration,
    /// `k - q - 1`. Always at least `r`.
    pub fn max_forbidden_order(&self) -> usize {
        (self.k as i64 - self.q - 1) as usize
    }
}

/// Validate a raw `(r, k, q)` triple.
pub fn validate_params(r: usize, k: usize, q: i64) -> Result<ParamTriple, ParamError> {
    ParamTriple::new(r, k, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_slack_triple() {
        let p = validate_params(2, 6, 0).unwrap();
        assert_eq!((p.r(), p.k(), p.q()), (2, 6, 0));
        assert_eq!(p.max_forbidden_order(), 5);
    }

    #[test]
    fn accepts_boundary_k() {
        // k = q + r + 1 exactly
        let p = validate_params(3, 2, -2).unwrap();
        assert_eq!(p.max_forbidden_order(), 3);
    }

    #[test]
    fn rejects_q_at_minus_r() {
        let err = validate_params(2, 5, -2).unwrap_err();
        match err {
            ParamError::QTooSmall { r, q } => {
                assert_eq!((r, q), (2, -2));
            }
            other => panic!("unexpected error {other:?}"),
        }
        // the error message records the degenerate extremal value
        assert!(err.to_string().contains("extremal edge count is 0"));
    }

    #[test]
    fn rejects_small_r_and_small_k() {
        assert!(matches!(
            validate_params(1, 4, 0),
            Err(ParamError::UniformityTooSmall { r: 1 })
        ));
        assert!(matches!(
            validate_params(2, 2, 0),
            Err(ParamError::KTooSmall { k: 2, min: 3 })
        ));
    }
}
