//! Exact extremal values on small instances: the maximum number of
//! edges of a free hypergraph on `n` vertices, for the at-most-`k`
//! family, the exactly-`k` family, and the multihypergraph batch-code
//! case.
//!
//! Two independent routes compute each value. The brute-force route
//! walks the full include/exclude lattice, pruning only supersets of
//! non-free prefixes (freeness is closed under subhypergraphs), and
//! re-checks freeness through the `freeness` module on every include.
//! The branch-and-bound route adds a value bound (current + remaining),
//! optional symmetry breaking, and an incremental vertex-window check:
//! a new edge creates a violation exactly when some window of at most
//! `k - q - 1` vertices around it contains more edges than the window
//! tolerates.

use serde::Serialize;
use thiserror::Error;

use crate::binom::binomial;
use crate::bounds::{diff_upper_general, BoundError};
use crate::freeness;
use crate::hypergraph::Hypergraph;
use crate::params::{ParamError, ParamTriple};

/// Search limits keep runtimes at desk scale; they are soft in the
/// sense of being resource guards, not correctness bounds.
pub const BRUTEFORCE_CANDIDATE_LIMIT: u128 = 24;
pub const BRANCH_AND_BOUND_CANDIDATE_LIMIT: u128 = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("{candidates} candidate edges exceed the {mode:?} limit of {limit}")]
    TooLarge {
        candidates: u128,
        limit: u128,
        mode: SearchMode,
    },
    #[error("degenerate parameters: {0}")]
    DegenerateParams(#[from] ParamError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Bruteforce,
    BranchAndBound,
}

/// Which forbidden family the search respects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    /// Selections of at most `k` edges.
    AtMost,
    /// Selections of exactly `k` edges.
    Exact,
}

/// An exact extremal value with an attaining witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactResult {
    pub value: usize,
    pub witness: Hypergraph,
    pub mode: SearchMode,
    pub explored_nodes: u64,
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub q: i64,
}

fn zero_result(n: usize, r: usize, k: usize, q: i64, mode: SearchMode) -> ExactResult {
    ExactResult {
        value: 0,
        witness: Hypergraph::empty(n, r),
        mode,
        explored_nodes: 0,
        n,
        r,
        k,
        q,
    }
}

fn complete_result(n: usize, r: usize, k: usize, q: i64, mode: SearchMode) -> ExactResult {
    let witness = Hypergraph::complete(n, r);
    ExactResult {
        value: witness.m(),
        witness,
        mode,
        explored_nodes: 0,
        n,
        r,
        k,
        q,
    }
}

fn check_size(n: usize, r: usize, mode: SearchMode) -> Result<(), ExactError> {
    let candidates = binomial(n as u64, r as u64);
    let limit = match mode {
        SearchMode::Bruteforce => BRUTEFORCE_CANDIDATE_LIMIT,
        SearchMode::BranchAndBound => BRANCH_AND_BOUND_CANDIDATE_LIMIT,
    };
    if candidates > limit {
        return Err(ExactError::TooLarge {
            candidates,
            limit,
            mode,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Window checker (branch-and-bound route)
// ---------------------------------------------------------------------------

/// Vertex windows of size at most `k - q - 1`: a selection with
/// deficiency above `q` exists exactly when some window holds more
/// edges than `|W| + q` (at-most family) or at least `k` edges
/// (exact-size family). Only windows around the newly added edge need
/// rechecking.
struct WindowChecker {
    windows_by_edge: Vec<Vec<u64>>,
    n: usize,
    q: i64,
    k: usize,
    family: Family,
    vacuous: bool,
}

impl WindowChecker {
    fn new(n: usize, r: usize, k: usize, q: i64, candidates: &[u64], family: Family) -> Self {
        assert!(n <= 64, "window checker uses single-word vertex masks");
        let max_order = (k as i64 - q - 1).clamp(0, n as i64) as usize;
        let vacuous = match family {
            Family::Exact => (n as i64) < k as i64 - q - 1,
            Family::AtMost => false,
        };
        let mut windows_by_edge = Vec::with_capacity(candidates.len());
        for &edge in candidates {
            let mut windows = Vec::new();
            if !vacuous && r <= max_order {
                let free: Vec<usize> = (0..n).filter(|v| edge & (1 << v) == 0).collect();
                let extra_max = max_order - r;
                // all subsets of the remaining vertices up to the size cap
                let mut stack: Vec<(usize, u64, usize)> = vec![(0, edge, 0)];
                while let Some((from, mask, picked)) = stack.pop() {
                    windows.push(mask);
                    if picked == extra_max {
                        continue;
                    }
                    for (i, &v) in free.iter().enumerate().skip(from) {
                        stack.push((i + 1, mask | (1 << v), picked + 1));
                    }
                }
            }
            windows_by_edge.push(windows);
        }
        WindowChecker {
            windows_by_edge,
            n,
            q,
            k,
            family,
            vacuous,
        }
    }

    /// May the edge join `chosen` without creating a forbidden
    /// selection?
    fn admits(&self, chosen: &[u64], edge_index: usize) -> bool {
        if self.vacuous {
            return true;
        }
        for &window in &self.windows_by_edge[edge_index] {
            let mut count = 1u64; // the new edge itself
            for &c in chosen {
                if c & !window == 0 {
                    count += 1;
                }
            }
            let violated = match self.family {
                Family::AtMost => count as i64 >= window.count_ones() as i64 + self.q + 1,
                Family::Exact => count as usize >= self.k,
            };
            if violated {
                return false;
            }
        }
        let _ = self.n;
        true
    }
}

// ---------------------------------------------------------------------------
// Search core
// ---------------------------------------------------------------------------

struct SearchProblem<'a> {
    n: usize,
    r: usize,
    k: usize,
    q: i64,
    candidates: Vec<Vec<usize>>,
    multiplicity_cap: usize,
    allow_multi: bool,
    family: Family,
    mode: SearchMode,
    params: &'a ParamTriple,
    symmetry_break: bool,
}

struct SearchState<'a> {
    problem: &'a SearchProblem<'a>,
    checker: Option<WindowChecker>,
    chosen: Vec<usize>, // candidate indices, repeats allowed up to the cap
    chosen_masks: Vec<u64>,
    best: Vec<usize>,
    explored: u64,
}

impl SearchState<'_> {
    /// Brute-force admission: rebuild the hypergraph and re-decide
    /// freeness through the freeness module (the witness hunt decides
    /// the same predicate as the exact maximum).
    fn admits_bruteforce(&self, extra: usize) -> bool {
        let mut edges: Vec<Vec<usize>> = self
            .chosen
            .iter()
            .map(|&i| self.problem.candidates[i].clone())
            .collect();
        edges.push(self.problem.candidates[extra].clone());
        let h = Hypergraph::new(self.problem.n, self.problem.r, edges, self.problem.allow_multi)
            .expect("candidate edges are valid");
        match self.problem.family {
            Family::AtMost => freeness::find_forbidden_witness(&h, self.problem.params)
                .expect("freeness on search candidates")
                .is_none(),
            Family::Exact => freeness::is_f_free(&h, self.problem.params)
                .expect("exact-size freeness on search candidates")
                .free,
        }
    }

    fn admits(&self, idx: usize) -> bool {
        match &self.checker {
            Some(checker) => checker.admits(&self.chosen_masks, idx),
            None => self.admits_bruteforce(idx),
        }
    }

    fn dfs(&mut self, idx: usize) {
        self.explored += 1;
        let total = self.problem.candidates.len();
        let remaining = (total - idx) * self.problem.multiplicity_cap;
        if self.problem.mode == SearchMode::BranchAndBound
            && self.chosen.len() + remaining <= self.best.len()
        {
            return;
        }
        if idx == total {
            return;
        }

        // greedily add copies while the family admits them, then retreat
        let mut added = 0;
        while added < self.problem.multiplicity_cap && self.admits(idx) {
            self.chosen.push(idx);
            self.chosen_masks.push(edge_mask(&self.problem.candidates[idx]));
            added += 1;
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
        }
        loop {
            let skip_empty_root =
                self.problem.symmetry_break && idx == 0 && self.chosen.is_empty();
            if !skip_empty_root {
                self.dfs(idx + 1);
            }
            if added == 0 {
                break;
            }
            self.chosen.pop();
            self.chosen_masks.pop();
            added -= 1;
        }
    }
}

fn edge_mask(edge: &[usize]) -> u64 {
    edge.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

fn run_search(problem: &SearchProblem) -> (usize, Hypergraph, u64) {
    let checker = match problem.mode {
        SearchMode::BranchAndBound => Some(WindowChecker::new(
            problem.n,
            problem.r,
            problem.k,
            problem.q,
            &problem
                .candidates
                .iter()
                .map(|e| edge_mask(e))
                .collect::<Vec<_>>(),
            problem.family,
        )),
        SearchMode::Bruteforce => None,
    };
    let mut state = SearchState {
        problem,
        checker,
        chosen: Vec::new(),
        chosen_masks: Vec::new(),
        best: Vec::new(),
        explored: 0,
    };
    state.dfs(0);
    let edges: Vec<Vec<usize>> = state
        .best
        .iter()
        .map(|&i| problem.candidates[i].clone())
        .collect();
    let witness = Hypergraph::new(problem.n, problem.r, edges, problem.allow_multi)
        .expect("search keeps candidate edges valid");
    (state.best.len(), witness, state.explored)
}

fn all_edges(n: usize, r: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(r).collect()
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Maximum edges of a simple `r`-graph on `n` vertices in which every
/// selection of at most `k` edges has deficiency at most `q`. At
/// `q <= -r` the value is 0: a single edge with `-q - r` padding
/// vertices is already a forbidden configuration (when even that does
/// not fit on `n` vertices, nothing is forbidden at all).
pub fn exact_ex(
    n: usize,
    r: usize,
    k: usize,
    q: i64,
    mode: SearchMode,
) -> Result<ExactResult, ExactError> {
    if r < 2 {
        return Err(ParamError::UniformityTooSmall { r }.into());
    }
    if k == 0 {
        return Err(ParamError::KTooSmall {
            k,
            min: q + r as i64 + 1,
        }
        .into());
    }
    if q <= -(r as i64) {
        return Ok(if (n as i64) < -q {
            complete_result(n, r, k, q, mode)
        } else {
            zero_result(n, r, k, q, mode)
        });
    }
    let params = ParamTriple::new(r, k, q)?;
    if mode == SearchMode::BranchAndBound
        && crate::construct::forbidden_sizes(&params).is_empty()
    {
        // no simple configuration is ever forbidden
        return Ok(complete_result(n, r, k, q, mode));
    }
    check_size(n, r, mode)?;
    let problem = SearchProblem {
        n,
        r,
        k,
        q,
        candidates: all_edges(n, r),
        multiplicity_cap: 1,
        allow_multi: false,
        family: Family::AtMost,
        mode,
        params: &params,
        symmetry_break: mode == SearchMode::BranchAndBound,
    };
    let (value, witness, explored_nodes) = run_search(&problem);
    Ok(ExactResult {
        value,
        witness,
        mode,
        explored_nodes,
        n,
        r,
        k,
        q,
    })
}

/// Maximum edges when only selections of exactly `k` edges are
/// constrained. Always at least [`exact_ex`] for the same parameters.
pub fn exact_f(
    n: usize,
    r: usize,
    k: usize,
    q: i64,
    mode: SearchMode,
) -> Result<ExactResult, ExactError> {
    let params = ParamTriple::new(r, k, q)?;
    let order = params.max_forbidden_order() as u128;
    if mode == SearchMode::BranchAndBound
        && (k as u128 > binomial(order as u64, r as u64) || n < params.max_forbidden_order())
    {
        // the single forbidden size is unrealizable, simply or at all
        return Ok(complete_result(n, r, k, q, mode));
    }
    check_size(n, r, mode)?;
    let problem = SearchProblem {
        n,
        r,
        k,
        q,
        candidates: all_edges(n, r),
        multiplicity_cap: 1,
        allow_multi: false,
        family: Family::Exact,
        mode,
        params: &params,
        symmetry_break: mode == SearchMode::BranchAndBound,
    };
    let (value, witness, explored_nodes) = run_search(&problem);
    Ok(ExactResult {
        value,
        witness,
        mode,
        explored_nodes,
        n,
        r,
        k,
        q,
    })
}

/// Maximum size of an `r`-uniform batch-code multihypergraph on `n`
/// servers with batch size `k`. Edge multiplicities are capped at `r`:
/// `r + 1` copies of one edge already violate the property.
pub fn exact_m(n: usize, r: usize, k: usize, mode: SearchMode) -> Result<ExactResult, ExactError> {
    let params = ParamTriple::new(r, k, 0)?;
    check_size(n, r, mode)?;
    let problem = SearchProblem {
        n,
        r,
        k,
        q: 0,
        candidates: all_edges(n, r),
        multiplicity_cap: r,
        allow_multi: true,
        family: Family::AtMost,
        mode,
        params: &params,
        symmetry_break: mode == SearchMode::BranchAndBound,
    };
    let (value, witness, explored_nodes) = run_search(&problem);
    Ok(ExactResult {
        value,
        witness,
        mode,
        explored_nodes,
        n,
        r,
        k,
        q: 0,
    })
}

/// One row of [`difference_table`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DifferenceRow {
    pub n: usize,
    pub exact_f: usize,
    pub exact_ex: usize,
    pub difference: usize,
    pub diff_upper: Option<u128>,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DifferenceTable {
    pub r: usize,
    pub k: usize,
    pub q: i64,
    pub rows: Vec<DifferenceRow>,
    /// For graphs: the largest difference seen, an empirical floor of
    /// the constant bounding the gap.
    pub empirical_d_floor: Option<usize>,
}

/// Exact-size vs at-most-size gap over a range of orders, checked
/// row-wise against the `(k-1) C(n-1, r-1)` bound.
pub fn difference_table(
    r: usize,
    k: usize,
    q: i64,
    n_range: std::ops::RangeInclusive<usize>,
    mode: SearchMode,
) -> Result<DifferenceTable, ExactError> {
    let mut rows = Vec::new();
    for n in n_range {
        let f = exact_f(n, r, k, q, mode)?;
        let ex = exact_ex(n, r, k, q, mode)?;
        let difference = f.value - ex.value;
        let diff_upper = match diff_upper_general(n, r, k) {
            Ok(v) => Some(v),
            Err(BoundError::NotApplicable(_)) => None,
            Err(_) => None,
        };
        let within_bound = diff_upper.map_or(true, |b| difference as u128 <= b);
        rows.push(DifferenceRow {
            n,
            exact_f: f.value,
            exact_ex: ex.value,
            difference,
            diff_upper,
            within_bound,
        });
    }
    let empirical_d_floor = if r == 2 {
        rows.iter().map(|row| row.difference).max()
    } else {
        None
    };
    Ok(DifferenceTable {
        r,
        k,
        q,
        rows,
        empirical_d_floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_cases() {
        // q <= -r: a single padded edge is forbidden, the maximum is zero
        let res = exact_ex(6, 2, 5, -2, SearchMode::BranchAndBound).unwrap();
        assert_eq!(res.value, 0);
        assert_eq!(res.witness.m(), 0);
        // unless the host is too small to realize even that
        let res = exact_ex(2, 2, 8, -3, SearchMode::BranchAndBound).unwrap();
        assert_eq!(res.value, 1);
        assert!(matches!(
            exact_ex(6, 1, 5, 0, SearchMode::Bruteforce),
            Err(ExactError::DegenerateParams(_))
        ));
        // exactly-k family: valid parameters only
        assert!(matches!(
            exact_f(6, 2, 5, -2, SearchMode::Bruteforce),
            Err(ExactError::DegenerateParams(_))
        ));
        assert!(matches!(
            exact_m(6, 2, 2, SearchMode::Bruteforce),
            Err(ExactError::DegenerateParams(_))
        ));
    }

    #[test]
    fn unrealizable_family_gives_complete_graph() {
        // (2, 4, 0) forbids nothing simple
        let res = exact_ex(7, 2, 4, 0, SearchMode::BranchAndBound).unwrap();
        assert_eq!(res.value, 21);
        // brute force agrees the long way on a small instance
        let bf = exact_ex(5, 2, 4, 0, SearchMode::Bruteforce).unwrap();
        assert_eq!(bf.value, 10);
    }

    #[test]
    fn size_limits_enforced() {
        assert!(matches!(
            exact_ex(8, 2, 6, 0, SearchMode::Bruteforce),
            Err(ExactError::TooLarge { .. })
        ));
        assert!(matches!(
            exact_ex(13, 2, 6, 0, SearchMode::BranchAndBound),
            Err(ExactError::TooLarge { .. })
        ));
    }

    #[test]
    fn batch_code_triangle() {
        // three items on three servers at batch size 4: the triangle
        let res = exact_m(3, 2, 4, SearchMode::Bruteforce).unwrap();
        assert_eq!(res.value, 3);
        assert!(freeness::is_cbc(&res.witness, 4).unwrap().free);
        let bnb = exact_m(3, 2, 4, SearchMode::BranchAndBound).unwrap();
        assert_eq!(bnb.value, 3);
    }

    #[test]
    fn multigraphs_dominate_simple() {
        for n in 3..=5 {
            let simple = exact_ex(n, 2, 4, 0, SearchMode::Bruteforce).unwrap();
            let multi = exact_m(n, 2, 4, SearchMode::Bruteforce).unwrap();
            assert!(multi.value >= simple.value);
        }
    }

    #[test]
    fn witnesses_pass_independent_recheck() {
        let params = ParamTriple::new(2, 6, 0).unwrap();
        for n in 3..=6 {
            let res = exact_ex(n, 2, 6, 0, SearchMode::BranchAndBound).unwrap();
            assert_eq!(res.witness.m(), res.value);
            assert!(freeness::is_free(&res.witness, &params).unwrap().free);

            let res = exact_f(n, 2, 6, 0, SearchMode::BranchAndBound).unwrap();
            assert_eq!(res.witness.m(), res.value);
            assert!(freeness::is_f_free(&res.witness, &params).unwrap().free);
        }
    }

    #[test]
    fn modes_agree_on_small_grid() {
        for n in 2..=6 {
            for k in 3..=7 {
                for q in [-1i64, 0, 1] {
                    if (k as i64) < q + 3 {
                        continue;
                    }
                    let bf = exact_ex(n, 2, k, q, SearchMode::Bruteforce).unwrap();
                    let bnb = exact_ex(n, 2, k, q, SearchMode::BranchAndBound).unwrap();
                    assert_eq!(bf.value, bnb.value, "ex mismatch at n={n} k={k} q={q}");
                    let bf = exact_f(n, 2, k, q, SearchMode::Bruteforce).unwrap();
                    let bnb = exact_f(n, 2, k, q, SearchMode::BranchAndBound).unwrap();
                    assert_eq!(bf.value, bnb.value, "f mismatch at n={n} k={k} q={q}");
                }
            }
        }
    }

    #[test]
    fn monotone_in_n_k_q() {
        let mode = SearchMode::BranchAndBound;
        // nondecreasing in n
        let mut prev = 0;
        for n in 3..=8 {
            let v = exact_ex(n, 2, 6, 0, mode).unwrap().value;
            assert!(v >= prev);
            prev = v;
        }
        // nonincreasing in k (more forbidden sizes)
        let mut prev = usize::MAX;
        for k in 5..=8 {
            let v = exact_ex(7, 2, k, 0, mode).unwrap().value;
            assert!(v <= prev);
            prev = v;
        }
        // nondecreasing in q
        let mut prev = 0;
        for q in [-1i64, 0, 1] {
            let v = exact_ex(7, 2, 7, q, mode).unwrap().value;
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn f_dominates_ex_and_small_graphs_are_free() {
        for n in 4..=6 {
            let f = exact_f(n, 2, 6, 0, SearchMode::Bruteforce).unwrap();
            let ex = exact_ex(n, 2, 6, 0, SearchMode::Bruteforce).unwrap();
            assert!(f.value >= ex.value);
            // fewer than k edges is always exact-size free
            assert!(f.value >= 5.min(binomial(n as u64, 2) as usize));
        }
    }

    #[test]
    fn difference_table_shape() {
        let table = difference_table(2, 6, 0, 5..=6, SearchMode::BranchAndBound).unwrap();
        assert_eq!(table.rows.len(), 2);
        for row in &table.rows {
            assert!(row.within_bound);
            assert_eq!(row.difference, row.exact_f - row.exact_ex);
        }
        assert!(table.empirical_d_floor.is_some());
    }
}
