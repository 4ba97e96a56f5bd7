//! Exact evaluators for the closed-form lower and upper bounds, the
//! difference bound, and the comparison exponents.
//!
//! Exponents are exact rationals; bound magnitudes are `f64` with a
//! documented 1e-9 relative-tolerance contract, verified by a second,
//! independently arranged evaluation. Every evaluator refuses inputs
//! outside its proven precondition range instead of extrapolating.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::binom::{binomial, binomial_f64, factorial};
use crate::params::ParamTriple;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("not applicable: requires {0}")]
    NotApplicable(&'static str),
    #[error("exact value for n = {n} is out of reach for the configured search limits")]
    InfeasibleExact { n: usize },
}

/// Growth exponent of the randomized construction:
/// `r - 1 + (q + r)/(k - 1)`.
pub fn lower_exponent(params: &ParamTriple) -> Rational {
    let r = params.r() as i64;
    let k = params.k() as i64;
    let q = params.q();
    Ratio::new(r - 1, 1) + Ratio::new(q + r, k - 1)
}

/// Graph-case upper bound `C * n^(1 + 1/h) + (q + 2) n` with
/// `h = floor(k / (q + 3))` and `C = (q + 2)^(1/h)`.
pub fn graph_upper(n: usize, k: usize, q: i64) -> Result<f64, BoundError> {
    if q < -1 {
        return Err(BoundError::NotApplicable("q >= -1"));
    }
    if (k as i64) < 2 * q + 6 {
        return Err(BoundError::NotApplicable("k >= 2q + 6"));
    }
    if (n as i64) < k as i64 {
        return Err(BoundError::NotApplicable("n >= k"));
    }
    let h = (k as i64).div_euclid(q + 3) as f64;
    let base = (q + 2) as f64;
    let nf = n as f64;
    Ok(base.powf(1.0 / h) * nf.powf(1.0 + 1.0 / h) + base * nf)
}

/// Same value through a different float arrangement, for the tolerance
/// contract: `C n^(1+1/h) = ((q+2) n^(h+1))^(1/h)`.
pub fn graph_upper_alt(n: usize, k: usize, q: i64) -> Result<f64, BoundError> {
    graph_upper(n, k, q)?;
    let h = (k as i64).div_euclid(q + 3) as f64;
    let base = (q + 2) as f64;
    let nf = n as f64;
    Ok((base * nf.powf(h + 1.0)).powf(1.0 / h) + base * nf)
}

/// Hypergraph upper bound
/// `(2C'/r!) n^(r-1+1/H) + (2(q+r)/r!) n^(r-1)` with
/// `H = floor(k/(q+r+1))` and `C' = (q+r)^(1/H)`. The same value holds
/// verbatim for multihypergraphs.
pub fn hypergraph_upper(n: usize, params: &ParamTriple) -> Result<f64, BoundError> {
    let (r, k, q) = (params.r() as i64, params.k() as i64, params.q());
    if k < 2 * q + 2 * r + 2 {
        return Err(BoundError::NotApplicable("k >= 2q + 2r + 2"));
    }
    if (n as i64) < k {
        return Err(BoundError::NotApplicable("n >= k"));
    }
    let cap = k.div_euclid(q + r + 1) as f64;
    let base = (q + r) as f64;
    let nf = n as f64;
    let rf = factorial(r as u64) as f64;
    Ok(2.0 * base.powf(1.0 / cap) / rf * nf.powf(r as f64 - 1.0 + 1.0 / cap)
        + 2.0 * base / rf * nf.powf(r as f64 - 1.0))
}

/// Second arrangement of [`hypergraph_upper`].
pub fn hypergraph_upper_alt(n: usize, params: &ParamTriple) -> Result<f64, BoundError> {
    hypergraph_upper(n, params)?;
    let (r, k, q) = (params.r() as i64, params.k() as i64, params.q());
    let cap = k.div_euclid(q + r + 1) as f64;
    let base = (q + r) as f64;
    let nf = n as f64;
    let rf = factorial(r as u64) as f64;
    let leading = (base * nf.powf((r as f64 - 1.0) * cap + 1.0)).powf(1.0 / cap);
    Ok(2.0 / rf * leading + 2.0 * base / rf * nf.powf(r as f64 - 1.0))
}

/// Batch-code upper bound: the `q = 0` case,
/// `(2C''/r!) n^(r-1+1/floor(k/(r+1))) + (2/(r-1)!) n^(r-1)`.
pub fn cbc_upper(n: usize, r: usize, k: usize) -> Result<f64, BoundError> {
    if r < 2 {
        return Err(BoundError::NotApplicable("r >= 2"));
    }
    if k < 2 * r + 2 {
        return Err(BoundError::NotApplicable("k >= 2r + 2"));
    }
    if n < k {
        return Err(BoundError::NotApplicable("n >= k"));
    }
    let cap = (k / (r + 1)) as f64;
    let nf = n as f64;
    let rf = factorial(r as u64) as f64;
    Ok(2.0 * (r as f64).powf(1.0 / cap) / rf * nf.powf(r as f64 - 1.0 + 1.0 / cap)
        + 2.0 / factorial(r as u64 - 1) as f64 * nf.powf(r as f64 - 1.0))
}

/// Exponent of the batch-code upper bound, `r - 1 + 1/floor(k/(r+1))`,
/// as an exact rational.
pub fn cbc_exponent(r: usize, k: usize) -> Result<Rational, BoundError> {
    if r < 2 {
        return Err(BoundError::NotApplicable("r >= 2"));
    }
    if k < r + 1 {
        return Err(BoundError::NotApplicable("k >= r + 1"));
    }
    Ok(Ratio::new(r as i64 - 1, 1) + Ratio::new(1, (k / (r + 1)) as i64))
}

/// Exponent `r - 1/2^(r-1)` of the competing published bound, for
/// side-by-side comparison tables.
pub fn competing_exponent(r: usize) -> Result<Rational, BoundError> {
    if r < 3 {
        return Err(BoundError::NotApplicable("r >= 3"));
    }
    Ok(Ratio::new(r as i64, 1) - Ratio::new(1, 1i64 << (r - 1)))
}

/// Smallest realizable size of a forbidden graph configuration:
/// `min { i : q + 3 <= i <= C(i-q-1, 2) }`, or `None` when no such size
/// fits under `k` (then nothing is forbidden and the extremal value is
/// the full C(n, 2)).
pub fn z_value(k: usize, q: i64) -> Option<usize> {
    let start = q + 3;
    for i in start.max(1)..=k as i64 {
        let order = (i - q - 1) as u64;
        if i as u128 <= binomial(order, 2) {
            return Some(i as usize);
        }
    }
    None
}

/// Truncated estimate of the constant bounding the exact-size vs
/// at-most-size difference for graphs:
/// `max({ z/(z-q-1) * n - ex(n) + 1 : n <= n_max } ∪ {1})`.
///
/// Uses exact extremal values, so `n_max` must stay within the exact
/// search limits. A lower estimate of the true constant: the maximum
/// over all n can only grow.
pub fn d_constant_estimate(k: usize, q: i64, n_max: usize) -> Result<f64, BoundError> {
    let z = match z_value(k, q) {
        Some(z) => z as i64,
        // nothing is forbidden; the difference is always zero
        None => return Ok(1.0),
    };
    let slope = Rational::new(z, z - q - 1);
    let mut best = Rational::new(1, 1);
    for n in 1..=n_max {
        let ex = crate::exact::exact_ex(n, 2, k, q, crate::exact::SearchMode::BranchAndBound)
            .map_err(|_| BoundError::InfeasibleExact { n })?
            .value;
        let candidate = slope * Rational::new(n as i64, 1) - Rational::new(ex as i64 - 1, 1);
        if candidate > best {
            best = candidate;
        }
    }
    Ok(*best.numer() as f64 / *best.denom() as f64)
}

/// Exact-size difference bound `(k-1) * C(n-1, r-1)`.
pub fn diff_upper_general(n: usize, r: usize, k: usize) -> Result<u128, BoundError> {
    if r < 2 {
        return Err(BoundError::NotApplicable("r >= 2"));
    }
    if k < 2 {
        return Err(BoundError::NotApplicable("k >= 2"));
    }
    if n < k {
        return Err(BoundError::NotApplicable("n >= k"));
    }
    Ok((k as u128 - 1) * binomial(n as u64 - 1, r as u64 - 1))
}

/// Graph-case bound on the exact-size extremal function at order `v`:
/// the two leading terms `C n^(1+1/floor(k/(k-v+2))) + (k-v+1) n`. The
/// additive constant completing the bound exists but has no closed
/// form, so the returned value omits it; callers compare asymptotics,
/// not single points.
pub fn f_upper_r2(n: usize, v: usize, k: usize) -> Result<f64, BoundError> {
    if v < 2 || v > k {
        return Err(BoundError::NotApplicable("2 <= v <= k"));
    }
    let h = (k / (k - v + 2)) as f64;
    let base = (k - v + 1) as f64;
    let nf = n as f64;
    Ok(base.powf(1.0 / h) * nf.powf(1.0 + 1.0 / h) + base * nf)
}

/// Hypergraph bound on the exact-size extremal function: the leading
/// term `(2C/r!) n^(r-1+1/floor(k/(k+r-v)))` plus the explicit
/// lower-order substitute `(2(q+r)/r!) n^(r-1) + (k-1) C(n-1, r-1)`
/// with `q = k - v - 1`.
pub fn f_upper_general(n: usize, r: usize, v: usize, k: usize) -> Result<f64, BoundError> {
    if r < 2 {
        return Err(BoundError::NotApplicable("r >= 2"));
    }
    if 2 * v < k + 2 * r || v > k + r - 2 {
        return Err(BoundError::NotApplicable("(k+2r)/2 <= v <= k+r-2"));
    }
    let q = k as i64 - v as i64 - 1;
    let cap = (k / (k + r - v)) as f64;
    let base = (k + r - v - 1) as f64;
    let nf = n as f64;
    let rf = factorial(r as u64) as f64;
    let leading = 2.0 * base.powf(1.0 / cap) / rf * nf.powf(r as f64 - 1.0 + 1.0 / cap);
    let lower_order = 2.0 * (q + r as i64) as f64 / rf * nf.powf(r as f64 - 1.0)
        + (k as f64 - 1.0) * binomial_f64(n as u64 - 1, r as u64 - 1);
    Ok(leading + lower_order)
}

/// Which bounds apply at a grid point, with the violated precondition
/// named whenever one does not.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub value: Option<f64>,
    pub not_applicable: Option<String>,
}

impl BoundEntry {
    fn from(result: Result<f64, BoundError>) -> Self {
        match result {
            Ok(value) => BoundEntry {
                value: Some(value),
                not_applicable: None,
            },
            Err(e) => BoundEntry {
                value: None,
                not_applicable: Some(e.to_string()),
            },
        }
    }
}

/// Every closed-form bound evaluated at one `(n, r, k, q)` grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub q: i64,
    /// Exact rational rendered as `num/den`.
    pub lower_exponent: String,
    pub lower_exponent_f64: f64,
    pub graph_upper: BoundEntry,
    pub hypergraph_upper: BoundEntry,
    pub cbc_upper: BoundEntry,
    pub diff_upper: BoundEntry,
    pub competing_exponent_f64: Option<f64>,
}

pub fn rational_to_f64(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Evaluate everything applicable at one grid point.
pub fn bound_report(n: usize, params: &ParamTriple) -> BoundReport {
    let (r, k, q) = (params.r(), params.k(), params.q());
    let lower = lower_exponent(params);
    let graph = if r == 2 {
        BoundEntry::from(graph_upper(n, k, q))
    } else {
        BoundEntry {
            value: None,
            not_applicable: Some("r = 2".to_string()),
        }
    };
    BoundReport {
        n,
        r,
        k,
        q,
        lower_exponent: format!("{}/{}", lower.numer(), lower.denom()),
        lower_exponent_f64: rational_to_f64(lower),
        graph_upper: graph,
        hypergraph_upper: BoundEntry::from(hypergraph_upper(n, params)),
        cbc_upper: BoundEntry::from(if q == 0 {
            cbc_upper(n, r, k)
        } else {
            Err(BoundError::NotApplicable("q = 0"))
        }),
        diff_upper: BoundEntry::from(diff_upper_general(n, r, k).map(|v| v as f64)),
        competing_exponent_f64: competing_exponent(r).ok().map(rational_to_f64),
    }
}
