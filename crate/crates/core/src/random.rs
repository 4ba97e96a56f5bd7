//! Seeded random hypergraph sampling.
//!
//! The generator is ChaCha8 keyed by a 64-bit seed; every operation
//! derives one fresh stream from its seed argument, so identical
//! arguments reproduce identical output on any platform.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RandomError {
    #[error("edge probability {p} is not in [0, 1]")]
    BadProbability { p: f64 },
}

/// Sample each of the C(n, r) possible edges independently with
/// probability `p`. Candidate edges are examined in lexicographic order
/// with one uniform draw each, which pins the output for a given seed.
pub fn random_uniform(n: usize, r: usize, p: f64, seed: u64) -> Result<Hypergraph, RandomError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(RandomError::BadProbability { p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for edge in (0..n).combinations(r) {
        if rng.gen::<f64>() < p {
            edges.push(edge);
        }
    }
    Ok(Hypergraph::new(n, r, edges, false).expect("sampled edges are valid by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binom::binomial;

    #[test]
    fn p_zero_is_empty_and_p_one_is_complete() {
        let empty = random_uniform(7, 3, 0.0, 1).unwrap();
        assert_eq!(empty.m(), 0);
        let full = random_uniform(7, 3, 1.0, 2).unwrap();
        assert_eq!(full.m() as u128, binomial(7, 3));
        assert_eq!(full, Hypergraph::complete(7, 3));
    }

    #[test]
    fn same_seed_same_output() {
        let a = random_uniform(12, 2, 0.37, 99).unwrap();
        let b = random_uniform(12, 2, 0.37, 99).unwrap();
        assert_eq!(a, b);
        let c = random_uniform(12, 2, 0.37, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(random_uniform(5, 2, -0.1, 0).is_err());
        assert!(random_uniform(5, 2, 1.5, 0).is_err());
        assert!(random_uniform(5, 2, f64::NAN, 0).is_err());
    }

    #[test]
    fn edge_count_matches_binomial_at_half() {
        // at p = 1/2 the total edge count over many seeds is a binomial
        // variable; stay within five standard deviations of its mean
        let n = 6;
        let trials = 1000u64;
        let per_trial = binomial(n as u64, 2) as f64;
        let mut total = 0u64;
        for seed in 0..trials {
            total += random_uniform(n, 2, 0.5, seed).unwrap().m() as u64;
        }
        let mean = per_trial * trials as f64 * 0.5;
        let sd = (per_trial * trials as f64 * 0.25).sqrt();
        assert!(
            (total as f64 - mean).abs() < 5.0 * sd,
            "total {total} outside 5 sigma of {mean}"
        );
    }
}
