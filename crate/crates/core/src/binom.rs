//! Small exact combinatorics helpers shared across the crate.

/// Binomial coefficient C(n, k) as an exact `u128`.
///
/// Saturates at `u128::MAX` rather than overflowing; desk-scale inputs
/// stay far below that.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// C(n, k) as `f64`, for bound formulas evaluated in floating point.
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    binomial(n, k) as f64
}

/// Exact factorial as `u128`; callers keep `n` small.
pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(4, 3), 4);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(35, 8), 23_535_820);
    }

    #[test]
    fn pascal_identity() {
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(5), 120);
        assert_eq!(factorial(7), 5040);
    }
}
