//! Randomized lower-bound construction: sample at the critical edge
//! probability, then delete one edge per forbidden witness until the
//! result is free.

use serde::Serialize;
use thiserror::Error;

use crate::binom::{binomial, binomial_f64, factorial};
use crate::freeness::{self, DeficiencyEngine};
use crate::hypergraph::Hypergraph;
use crate::params::ParamTriple;
use crate::random::RandomError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Random(#[from] RandomError),
    #[error("no c in the grid keeps the average deletion count within budget")]
    NoFeasibleC,
}

/// Sizes `i` for which a forbidden configuration with `i` edges exists
/// as a simple hypergraph: `q + r + 2 <= i <= k` and `i <= C(i-q-1, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenSizeSet {
    pub values: Vec<usize>,
}

impl ForbiddenSizeSet {
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The realizable forbidden sizes for a parameter triple. An empty set
/// means no simple hypergraph is ever forbidden, so the extremal value
/// is the full C(n, r).
pub fn forbidden_sizes(params: &ParamTriple) -> ForbiddenSizeSet {
    let (r, k, q) = (params.r() as i64, params.k() as i64, params.q());
    let mut values = Vec::new();
    for i in (q + r + 2).max(1)..=k {
        let order = i - q - 1;
        if order >= 0 && (i as u128) <= binomial(order as u64, r as u64) {
            values.push(i as usize);
        }
    }
    ForbiddenSizeSet { values }
}

/// The critical sampling probability `c * n^(-1 + (q+r)/(k-1))`, clamped
/// into `[0, 1]`. Returns the clamped value and whether clamping fired.
pub fn edge_probability(n: usize, params: &ParamTriple, c: f64) -> (f64, bool) {
    let exponent = -1.0 + (params.q() as f64 + params.r() as f64) / (params.k() as f64 - 1.0);
    let raw = c * (n as f64).powf(exponent);
    if raw > 1.0 {
        (1.0, true)
    } else {
        (raw, false)
    }
}

/// Expected number of sampled edges, `p * C(n, r)`.
pub fn expected_edges(n: usize, r: usize, p: f64) -> f64 {
    p * binomial_f64(n as u64, r as u64)
}

/// First-moment bound on forbidden configurations, with the leading
/// constant reported separately.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForbiddenExpectation {
    /// Sum over realizable sizes `i` of
    /// `C(C(i-q-1, r), i) * p^i * C(n, i-q-1)`.
    pub value: f64,
    /// `max_i C(C(i-q-1, r), i) / (i-q-1)!` over the same sizes.
    pub leading_constant: f64,
}

/// Expected count of forbidden configurations in a sample at edge
/// probability `p`, summed over the realizable sizes.
pub fn expected_forbidden_upper(n: usize, params: &ParamTriple, p: f64) -> ForbiddenExpectation {
    let sizes = forbidden_sizes(params);
    let r = params.r() as u64;
    let q = params.q();
    let mut value = 0.0f64;
    let mut leading_constant = 0.0f64;
    for &i in &sizes.values {
        let order = (i as i64 - q - 1) as u64;
        let ways = binomial(binomial(order, r).min(u64::MAX as u128) as u64, i as u64) as f64;
        value += ways * p.powi(i as i32) * binomial_f64(n as u64, order);
        leading_constant = leading_constant.max(ways / factorial(order) as f64);
    }
    ForbiddenExpectation {
        value,
        leading_constant,
    }
}

/// Which edge of the current witness the repair loop deletes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeletionPolicy {
    /// Edge meeting the most other witness edges; ties go to the lowest
    /// index. Default: it tends to kill several witnesses at once.
    WitnessMaxDegree,
    /// Uniformly random edge of the witness, drawn from the run's seeded
    /// stream.
    RandomInWitness,
    /// Lowest edge index in the witness.
    FirstIndex,
}

impl std::str::FromStr for DeletionPolicy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "witness-max-degree" => Ok(DeletionPolicy::WitnessMaxDegree),
            "random-in-witness" => Ok(DeletionPolicy::RandomInWitness),
            "first-index" => Ok(DeletionPolicy::FirstIndex),
            other => Err(format!("unknown deletion policy `{other}`")),
        }
    }
}

impl DeletionPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            DeletionPolicy::WitnessMaxDegree => "witness-max-degree",
            DeletionPolicy::RandomInWitness => "random-in-witness",
            DeletionPolicy::FirstIndex => "first-index",
        }
    }
}

/// Record of one construction run. `result` is certified free before the
/// report is returned.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub q: i64,
    pub c: f64,
    pub p: f64,
    pub clamped: bool,
    pub seed: u64,
    pub policy: DeletionPolicy,
    pub sampled_edges: usize,
    pub deletions: usize,
    #[serde(skip)]
    pub result: Hypergraph,
}

impl ConstructionReport {
    pub fn retained_edges(&self) -> usize {
        self.sampled_edges - self.deletions
    }
}

/// Sample a random hypergraph at the critical probability and repair by
/// deleting one witness edge at a time until the result is free.
/// Identical arguments give identical reports.
///
/// Deleting an edge never creates a witness, so the repair scans
/// witnesses in enumeration order and resumes where it left off:
/// connected witnesses first, then (when the excess allows disconnected
/// witnesses, `q >= 1`) unions of surviving positive blocks, collected
/// once and only ever shrinking.
pub fn random_construct(
    n: usize,
    params: &ParamTriple,
    c: f64,
    seed: u64,
    policy: DeletionPolicy,
) -> Result<ConstructionReport, ConstructError> {
    use rand::{Rng, SeedableRng};

    let (p, clamped) = edge_probability(n, params, c);
    let sampled = crate::random::random_uniform(n, params.r(), p, seed)?;
    let sampled_edges = sampled.m();

    // separate stream for the random deletion policy, so the sampling
    // draws stay aligned with random_uniform's contract
    let mut policy_rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);

    let budget = realizable_budget(params, n);
    let threshold = params.q() + 1;
    let mut engine = DeficiencyEngine::new(&sampled);
    let mut deletions = 0usize;

    let mut pick_victim = |witness: &[usize], engine: &DeficiencyEngine| match policy {
        DeletionPolicy::FirstIndex => witness[0],
        DeletionPolicy::RandomInWitness => witness[policy_rng.gen_range(0..witness.len())],
        DeletionPolicy::WitnessMaxDegree => {
            let mut best = witness[0];
            let mut best_deg = 0usize;
            for &e in witness {
                let deg = witness
                    .iter()
                    .filter(|&&f| {
                        f != e && engine.edge(e).iter().any(|v| engine.edge(f).contains(v))
                    })
                    .count();
                if deg > best_deg {
                    best = e;
                    best_deg = deg;
                }
            }
            best
        }
    };

    if budget > 0 {
        // connected witnesses, resuming from the last fruitful root
        let mut floor = 0;
        while let Some((witness, root)) = engine.search_single_from(budget, threshold, floor) {
            let victim = pick_victim(&witness, &engine);
            engine.remove_edge(victim);
            deletions += 1;
            floor = root;
        }
        // disconnected witnesses require several positive blocks
        if threshold >= 2 {
            let mut positives = engine.collect_positives(budget);
            while let Some(witness) = freeness::combo_reaching(
                &positives,
                budget,
                params.r(),
                threshold,
                engine.span_words(),
            ) {
                let victim = pick_victim(&witness, &engine);
                engine.remove_edge(victim);
                deletions += 1;
                positives.retain(|block| !block.indices.contains(&victim));
            }
        }
    }

    let result = Hypergraph::new(n, params.r(), engine.alive_edges(), false)
        .expect("surviving edges form a valid hypergraph");
    debug_assert!(freeness::find_forbidden_witness(&result, params)
        .expect("freeness check on repaired output")
        .is_none());
    Ok(ConstructionReport {
        n,
        r: params.r(),
        k: params.k(),
        q: params.q(),
        c,
        p,
        clamped,
        seed,
        policy,
        sampled_edges,
        deletions,
        result,
    })
}

fn realizable_budget(params: &ParamTriple, n: usize) -> usize {
    let cap = n as i64 + params.q() + 1;
    if cap <= 0 {
        0
    } else {
        params.k().min(cap as usize)
    }
}

/// Grid of candidate constants for [`auto_tune_c`].
pub const C_GRID_EXPONENTS: std::ops::RangeInclusive<i32> = -10..=3;

/// Largest `c = 2^j` in the grid whose average deletion count over the
/// given seeds stays within half the average sample size.
pub fn auto_tune_c(n: usize, params: &ParamTriple, seeds: &[u64]) -> Result<f64, ConstructError> {
    for j in C_GRID_EXPONENTS.rev() {
        let c = 2f64.powi(j);
        let mut total_sampled = 0u64;
        let mut total_deleted = 0u64;
        let mut feasible = true;
        for (done, &seed) in seeds.iter().enumerate() {
            let report = random_construct(n, params, c, seed, DeletionPolicy::WitnessMaxDegree)?;
            total_sampled += report.sampled_edges as u64;
            total_deleted += report.deletions as u64;
            // bail once no remaining run can pull the average back
            let remaining = (seeds.len() - done - 1) as u64;
            let max_future = binomial(n as u64, params.r() as u64).min(u64::MAX as u128) as u64;
            if total_deleted * 2 > total_sampled + remaining * max_future {
                feasible = false;
                break;
            }
        }
        if feasible && total_deleted * 2 <= total_sampled {
            return Ok(c);
        }
    }
    Err(ConstructError::NoFeasibleC)
}
