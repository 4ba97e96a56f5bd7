//! Deciding freeness and the batch-code property, and decoding requests
//! through systems of distinct representatives.
//!
//! A hypergraph is `(k, q)`-free when every nonempty selection of at
//! most `k` edges has deficiency `|S| - |cover(S)|` at most `q`. A
//! violating selection is a *witness*: together with enough padding
//! vertices it realizes a forbidden configuration. Padding is only
//! possible while `|S| - q - 1 <= n`, so the searches below cap the
//! selection size at `min(k, n + q + 1)`; selections beyond that cannot
//! be realized on `n` vertices at all.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{EdgeSelection, Hypergraph};
use crate::params::ParamTriple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreenessError {
    #[error("hypergraph has no edges")]
    EmptyHypergraph,
    #[error("selection budget k must be at least 1")]
    InvalidBudget,
    #[error("{m} edges exceed the brute-force limit of {limit}")]
    TooLarge { m: usize, limit: usize },
    #[error("request mentions edge {index}, hypergraph has {m} edges")]
    BadRequest { index: usize, m: usize },
    #[error("no system of distinct representatives; deficient sub-request {violator:?}")]
    NoSdr { violator: EdgeSelection },
}

/// Outcome of a freeness check.
///
/// `witness` is present exactly when `free` is false, and then its
/// deficiency is at least `q + 1`. `max_deficiency_found` is the maximum
/// deficiency over the selections the check ranged over; it is `None`
/// when that range was empty (no edges, or no realizable selection
/// size).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreenessVerdict {
    pub free: bool,
    pub witness: Option<EdgeSelection>,
    pub max_deficiency_found: Option<i64>,
}

impl FreenessVerdict {
    fn trivially_free() -> Self {
        FreenessVerdict {
            free: true,
            witness: None,
            max_deficiency_found: None,
        }
    }
}

/// Assignment of requested items (edge indices) to distinct servers
/// (vertices), each item on a vertex of its own edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RetrievalPlan {
    pub assignment: BTreeMap<usize, usize>,
}

// ---------------------------------------------------------------------------
// Connected-family search engine
// ---------------------------------------------------------------------------

/// Word-array bitset over vertices; small and cheap to intersect.
type SpanMask = Vec<u64>;

fn mask_words(n: usize) -> usize {
    n / 64 + 1
}

fn masks_intersect(a: &SpanMask, b: &SpanMask) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// A connected family with positive deficiency; the building block of
/// disconnected witnesses.
#[derive(Debug, Clone)]
pub(crate) struct Positive {
    pub(crate) def: i64,
    pub(crate) indices: Vec<usize>,
    span: SpanMask,
}

/// Best candidate under the (deficiency desc, size asc, lex asc) order.
#[derive(Debug, Clone)]
struct Best {
    def: i64,
    indices: Vec<usize>,
}

fn better(def: i64, indices: &[usize], best: &Option<Best>) -> bool {
    use std::cmp::Ordering;
    match best {
        None => true,
        Some(b) => match def.cmp(&b.def) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => match indices.len().cmp(&b.indices.len()) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => indices < b.indices.as_slice(),
            },
        },
    }
}

/// Incremental search state over a hypergraph whose edges can be marked
/// dead; the repair loop in `construct` deletes edges without rebuilding
/// incidence lists.
pub(crate) struct DeficiencyEngine {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    alive: Vec<bool>,
    alive_count: usize,
}

struct Search<'a> {
    g: &'a DeficiencyEngine,
    k: usize,
    /// Track the exact maximum (exact mode); otherwise threshold mode.
    track_best: bool,
    /// Threshold-mode prune line: subtrees whose extension bound falls
    /// below it are cut.
    prune_floor: i64,
    /// Stop as soon as one connected family reaches this deficiency.
    stop_threshold: Option<i64>,
    /// Record every family with deficiency at least 1.
    collect_positives: bool,
    start_root: usize,
    root: usize,
    sel: Vec<usize>,
    in_sel: Vec<bool>,
    cover_count: Vec<u32>,
    cover_size: usize,
    /// Depth stamp (depth + 1) of the level that banned each edge;
    /// 0 means not banned.
    banned_at: Vec<u32>,
    in_frontier: Vec<bool>,
    /// Extension lists per recursion depth, reused across siblings.
    ext_pool: Vec<Vec<usize>>,
    best: Option<Best>,
    positives: Vec<Positive>,
    found: Option<Vec<usize>>,
    found_root: usize,
}

impl DeficiencyEngine {
    pub(crate) fn new(h: &Hypergraph) -> Self {
        Self::from_edges(h.n(), h.r(), h.edges().to_vec())
    }

    pub(crate) fn from_edges(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Self {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, edge) in edges.iter().enumerate() {
            for &v in edge {
                incident[v].push(i);
            }
        }
        let alive_count = edges.len();
        DeficiencyEngine {
            n,
            r,
            edges,
            incident,
            alive: vec![true; alive_count],
            alive_count,
        }
    }

    pub(crate) fn remove_edge(&mut self, index: usize) {
        if self.alive[index] {
            self.alive[index] = false;
            self.alive_count -= 1;
        }
    }

    pub(crate) fn alive_edges(&self) -> Vec<Vec<usize>> {
        (0..self.edges.len())
            .filter(|&i| self.alive[i])
            .map(|i| self.edges[i].clone())
            .collect()
    }

    pub(crate) fn edge(&self, index: usize) -> &[usize] {
        &self.edges[index]
    }

    /// Maximum deficiency over nonempty selections of size at most `k`,
    /// with one deterministic maximizer. `None` when no edge is alive.
    pub(crate) fn search_max(&self, k: usize) -> Option<(i64, Vec<usize>)> {
        if self.alive_count == 0 || k == 0 {
            return None;
        }
        let mut s = Search::new(self, k);
        s.track_best = true;
        s.collect_positives = true;
        s.run();
        s.finish_max()
    }

    /// First selection of size at most `k` with deficiency at least `t`,
    /// in the engine's deterministic search order.
    pub(crate) fn search_threshold(&self, k: usize, t: i64) -> Option<Vec<usize>> {
        if self.alive_count == 0 || k == 0 {
            return None;
        }
        let mut s = Search::new(self, k);
        s.prune_floor = t.min(1);
        s.stop_threshold = Some(t);
        s.collect_positives = t >= 2;
        s.run();
        if let Some(found) = s.found {
            return Some(found);
        }
        if t >= 2 {
            combo_reaching(&s.positives, k, self.r, t, mask_words(self.n))
        } else {
            None
        }
    }

    /// First *connected* family with deficiency at least `t` whose
    /// minimum edge index is at least `floor`, with that root index.
    /// Deleting edges never creates witnesses, so repair loops resume
    /// from the last root instead of rescanning verified ones.
    pub(crate) fn search_single_from(
        &self,
        k: usize,
        t: i64,
        floor: usize,
    ) -> Option<(Vec<usize>, usize)> {
        if self.alive_count == 0 || k == 0 {
            return None;
        }
        let mut s = Search::new(self, k);
        s.prune_floor = t;
        s.stop_threshold = Some(t);
        s.start_root = floor;
        s.run();
        let root = s.found_root;
        s.found.map(|w| (w, root))
    }

    /// Every connected family of size at most `k` with deficiency at
    /// least 1. Deletions only shrink this set, so one enumeration
    /// serves a whole repair phase.
    pub(crate) fn collect_positives(&self, k: usize) -> Vec<Positive> {
        if self.alive_count == 0 || k == 0 {
            return Vec::new();
        }
        let mut s = Search::new(self, k);
        s.prune_floor = 1;
        s.collect_positives = true;
        s.run();
        s.positives
    }

    pub(crate) fn span_words(&self) -> usize {
        mask_words(self.n)
    }
}

impl<'a> Search<'a> {
    fn new(g: &'a DeficiencyEngine, k: usize) -> Self {
        let m = g.edges.len();
        Search {
            g,
            k,
            track_best: false,
            prune_floor: i64::MIN,
            stop_threshold: None,
            collect_positives: false,
            start_root: 0,
            root: 0,
            sel: Vec::with_capacity(k),
            in_sel: vec![false; m],
            cover_count: vec![0; g.n],
            cover_size: 0,
            banned_at: vec![0; m],
            in_frontier: vec![false; m],
            ext_pool: (0..=k).map(|_| Vec::new()).collect(),
            best: None,
            positives: Vec::new(),
            found: None,
            found_root: 0,
        }
    }

    fn add_edge(&mut self, e: usize) {
        self.sel.push(e);
        self.in_sel[e] = true;
        for &v in &self.g.edges[e] {
            if self.cover_count[v] == 0 {
                self.cover_size += 1;
            }
            self.cover_count[v] += 1;
        }
    }

    fn pop_edge(&mut self, e: usize) {
        self.sel.pop();
        self.in_sel[e] = false;
        for &v in &self.g.edges[e] {
            self.cover_count[v] -= 1;
            if self.cover_count[v] == 0 {
                self.cover_size -= 1;
            }
        }
    }

    fn deficiency(&self) -> i64 {
        self.sel.len() as i64 - self.cover_size as i64
    }

    fn span_mask(&self) -> SpanMask {
        let mut mask = vec![0u64; mask_words(self.g.n)];
        for &e in &self.sel {
            for &v in &self.g.edges[e] {
                mask[v / 64] |= 1 << (v % 64);
            }
        }
        mask
    }

    fn sorted_sel(&self) -> Vec<usize> {
        let mut s = self.sel.clone();
        s.sort_unstable();
        s
    }

    /// Record the current selection; returns true when the search can
    /// stop (threshold reached).
    fn visit(&mut self) -> bool {
        let def = self.deficiency();
        if let Some(t) = self.stop_threshold {
            if def >= t {
                self.found = Some(self.sorted_sel());
                self.found_root = self.root;
                return true;
            }
        }
        if self.track_best {
            // compare value and size before paying for the sorted copy
            let interesting = match &self.best {
                None => true,
                Some(b) => {
                    def > b.def || (def == b.def && self.sel.len() <= b.indices.len())
                }
            };
            if interesting {
                let indices = self.sorted_sel();
                if better(def, &indices, &self.best) {
                    self.best = Some(Best { def, indices });
                }
            }
        }
        if self.collect_positives && def >= 1 {
            self.positives.push(Positive {
                def,
                indices: self.sorted_sel(),
                span: self.span_mask(),
            });
        }
        false
    }

    /// Upper bound on the deficiency of any extension of the current
    /// selection within the budget: each further edge adds at most one,
    /// and the cover never shrinks.
    fn extension_bound(&self) -> i64 {
        let by_growth = self.deficiency() + (self.k - self.sel.len()) as i64;
        let by_span = self.k as i64 - self.cover_size as i64;
        by_growth.min(by_span)
    }

    fn prune_extensions(&self) -> bool {
        let ub = self.extension_bound();
        if self.track_best {
            // positives (def >= 1) must all be collected for the
            // disjoint-union phase, so only prune below that line, and
            // strictly below the incumbent so ties keep their tie-break
            ub < 1
                && match &self.best {
                    Some(b) => ub < b.def,
                    None => false,
                }
        } else {
            ub < self.prune_floor
        }
    }

    /// Append the unseen neighbors of `e` to `out`, marking them in the
    /// frontier; returns with the appended suffix sorted.
    fn push_fresh_neighbors(&mut self, e: usize, out: &mut Vec<usize>) {
        let g = self.g;
        let from = out.len();
        for &v in &g.edges[e] {
            for &other in &g.incident[v] {
                if other > self.root
                    && g.alive[other]
                    && !self.in_sel[other]
                    && !self.in_frontier[other]
                {
                    self.in_frontier[other] = true;
                    out.push(other);
                }
            }
        }
        out[from..].sort_unstable();
    }

    fn extend(&mut self, depth: usize) {
        if self.sel.len() == self.k {
            return;
        }
        let stamp = depth as u32 + 1;
        let ext_len = self.ext_pool[depth].len();
        for pos in 0..ext_len {
            let c = self.ext_pool[depth][pos];
            if self.banned_at[c] != 0 {
                continue;
            }
            self.add_edge(c);
            let stop = self.visit();
            if !stop && !self.prune_extensions() && self.sel.len() < self.k {
                // child candidates: remaining siblings plus the fresh
                // neighbors of c
                let mut next = std::mem::take(&mut self.ext_pool[depth + 1]);
                next.clear();
                next.extend_from_slice(&self.ext_pool[depth][pos + 1..]);
                let copied = next.len();
                self.push_fresh_neighbors(c, &mut next);
                self.ext_pool[depth + 1] = next;
                self.extend(depth + 1);
                for i in copied..self.ext_pool[depth + 1].len() {
                    let f = self.ext_pool[depth + 1][i];
                    self.in_frontier[f] = false;
                }
            }
            self.pop_edge(c);
            if self.found.is_some() {
                break;
            }
            self.banned_at[c] = stamp;
        }
        for pos in 0..ext_len {
            let c = self.ext_pool[depth][pos];
            if self.banned_at[c] == stamp {
                self.banned_at[c] = 0;
            }
        }
    }

    /// Enumerate every connected family exactly once: families are
    /// rooted at their minimum edge index, and explored candidates are
    /// banned for the remaining siblings.
    fn run(&mut self) {
        for root in self.start_root..self.g.edges.len() {
            if !self.g.alive[root] {
                continue;
            }
            self.root = root;
            self.add_edge(root);
            let stop = self.visit();
            if !stop && !self.prune_extensions() {
                let mut frontier = std::mem::take(&mut self.ext_pool[0]);
                frontier.clear();
                self.push_fresh_neighbors(root, &mut frontier);
                self.ext_pool[0] = frontier;
                self.extend(0);
                for i in 0..self.ext_pool[0].len() {
                    let f = self.ext_pool[0][i];
                    self.in_frontier[f] = false;
                }
            }
            self.pop_edge(root);
            if self.found.is_some() {
                return;
            }
        }
    }

    fn finish_max(mut self) -> Option<(i64, Vec<usize>)> {
        // disjoint unions of positive blocks can beat any single
        // connected family once the budget allows several dense spots
        let positives = std::mem::take(&mut self.positives);
        let words = mask_words(self.g.n);
        let mut stack: Vec<(usize, i64, Vec<usize>, SpanMask)> =
            vec![(0, 0, Vec::new(), vec![0u64; words])];
        while let Some((from, def, union, span)) = stack.pop() {
            for j in from..positives.len() {
                let p = &positives[j];
                if union.len() + p.indices.len() > self.k {
                    continue;
                }
                if masks_intersect(&span, &p.span) {
                    continue;
                }
                let mut u = union.clone();
                u.extend_from_slice(&p.indices);
                u.sort_unstable();
                let d = def + p.def;
                if better(d, &u, &self.best) {
                    self.best = Some(Best {
                        def: d,
                        indices: u.clone(),
                    });
                }
                let headroom = combo_headroom(self.k - u.len(), self.g.r);
                let worth_extending = match &self.best {
                    Some(b) => d + headroom >= b.def,
                    None => true,
                };
                if worth_extending {
                    let mut s = span.clone();
                    for (w, pw) in s.iter_mut().zip(&p.span) {
                        *w |= pw;
                    }
                    stack.push((j + 1, d, u, s));
                }
            }
        }
        self.best.map(|b| (b.def, b.indices))
    }
}

/// Largest extra deficiency a remaining budget can contribute: every
/// additional vertex-disjoint block costs at least `r` edges beyond its
/// deficiency.
fn combo_headroom(budget: usize, r: usize) -> i64 {
    if budget > r {
        (budget - r) as i64
    } else {
        0
    }
}

/// First disjoint union of positive blocks with total deficiency at
/// least `t` and total size within `k`, in list order.
pub(crate) fn combo_reaching(
    positives: &[Positive],
    k: usize,
    r: usize,
    t: i64,
    words: usize,
) -> Option<Vec<usize>> {
    let mut stack: Vec<(usize, i64, Vec<usize>, SpanMask)> =
        vec![(0, 0, Vec::new(), vec![0u64; words])];
    while let Some((from, def, union, span)) = stack.pop() {
        for j in from..positives.len() {
            let p = &positives[j];
            if union.len() + p.indices.len() > k {
                continue;
            }
            if masks_intersect(&span, &p.span) {
                continue;
            }
            let mut u = union.clone();
            u.extend_from_slice(&p.indices);
            u.sort_unstable();
            let d = def + p.def;
            if d >= t {
                return Some(u);
            }
            if d + combo_headroom(k - u.len(), r) >= t {
                let mut s = span.clone();
                for (w, pw) in s.iter_mut().zip(&p.span) {
                    *w |= pw;
                }
                stack.push((j + 1, d, u, s));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Maximum of `|S| - |cover(S)|` over nonempty selections with
/// `1 <= |S| <= k`, together with one maximizer.
///
/// Connected families are enumerated by a rooted DFS (each added edge
/// raises deficiency by at most one, which bounds extensions), and
/// vertex-disjoint dense blocks are then combined under the shared
/// budget. Deficiency is additive over vertex-disjoint blocks, so this
/// covers all selections.
pub fn max_deficiency(
    h: &Hypergraph,
    k: usize,
) -> Result<(i64, EdgeSelection), FreenessError> {
    if h.m() == 0 {
        return Err(FreenessError::EmptyHypergraph);
    }
    if k == 0 {
        return Err(FreenessError::InvalidBudget);
    }
    let engine = DeficiencyEngine::new(h);
    let (def, indices) = engine
        .search_max(k)
        .expect("nonempty hypergraph yields a candidate");
    Ok((def, EdgeSelection::new(indices)))
}

pub const BRUTEFORCE_EDGE_LIMIT: usize = 20;

/// Exhaustive maximum over all nonempty selections of size at most `k`.
/// Ties prefer the smallest selection, then the lexicographically
/// smallest index set. Testing oracle for [`max_deficiency`]; refuses
/// more than [`BRUTEFORCE_EDGE_LIMIT`] edges.
pub fn max_deficiency_bruteforce(
    h: &Hypergraph,
    k: usize,
) -> Result<(i64, EdgeSelection), FreenessError> {
    if h.m() == 0 {
        return Err(FreenessError::EmptyHypergraph);
    }
    if k == 0 {
        return Err(FreenessError::InvalidBudget);
    }
    if h.m() > BRUTEFORCE_EDGE_LIMIT {
        return Err(FreenessError::TooLarge {
            m: h.m(),
            limit: BRUTEFORCE_EDGE_LIMIT,
        });
    }

    // at most 20 * r incident vertices: remap them into one wide mask
    let mut compact: BTreeMap<usize, u32> = BTreeMap::new();
    for edge in h.edges() {
        for &v in edge {
            let next = compact.len() as u32;
            compact.entry(v).or_insert(next);
        }
    }
    assert!(compact.len() <= 128, "bounded by the edge limit");
    let masks: Vec<u128> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u128, |m, v| m | (1 << compact[v])))
        .collect();

    struct Rec<'a> {
        masks: &'a [u128],
        k: usize,
        sel: Vec<usize>,
        best: Option<Best>,
    }
    impl Rec<'_> {
        fn go(&mut self, from: usize, cover: u128) {
            if !self.sel.is_empty() {
                let def = self.sel.len() as i64 - cover.count_ones() as i64;
                if better(def, &self.sel, &self.best) {
                    self.best = Some(Best {
                        def,
                        indices: self.sel.clone(),
                    });
                }
            }
            if self.sel.len() == self.k {
                return;
            }
            for e in from..self.masks.len() {
                self.sel.push(e);
                self.go(e + 1, cover | self.masks[e]);
                self.sel.pop();
            }
        }
    }

    let mut rec = Rec {
        masks: &masks,
        k: k.min(h.m()),
        sel: Vec::new(),
        best: None,
    };
    rec.go(0, 0);
    let best = rec.best.expect("nonempty hypergraph yields a candidate");
    Ok((best.def, EdgeSelection::new(best.indices)))
}

/// Selection budget that can still be realized as a forbidden
/// configuration on `n` vertices: a witness of size `s` needs
/// `s - q - 1` vertices.
fn realizable_budget(k: usize, n: usize, q: i64) -> usize {
    let cap = n as i64 + q + 1;
    if cap <= 0 {
        0
    } else {
        k.min(cap as usize)
    }
}

/// Is every selection of at most `k` edges covering at least `|S| - q`
/// vertices? Not-free verdicts carry a maximizing witness.
pub fn is_free(h: &Hypergraph, params: &ParamTriple) -> Result<FreenessVerdict, FreenessError> {
    let k = realizable_budget(params.k(), h.n(), params.q());
    if h.m() == 0 || k == 0 {
        return Ok(FreenessVerdict::trivially_free());
    }
    let (def, witness) = max_deficiency(h, k)?;
    let free = def <= params.q();
    Ok(FreenessVerdict {
        free,
        witness: if free { None } else { Some(witness) },
        max_deficiency_found: Some(def),
    })
}

/// Witness hunt without the exact maximum: returns some selection with
/// deficiency above `q` (the repair loop's workhorse), or `None` when
/// the hypergraph is free. Same verdict as [`is_free`], cheaper when a
/// witness exists.
pub fn find_forbidden_witness(
    h: &Hypergraph,
    params: &ParamTriple,
) -> Result<Option<EdgeSelection>, FreenessError> {
    let k = realizable_budget(params.k(), h.n(), params.q());
    if h.m() == 0 || k == 0 {
        return Ok(None);
    }
    let engine = DeficiencyEngine::new(h);
    Ok(engine
        .search_threshold(k, params.q() + 1)
        .map(EdgeSelection::new))
}

/// Freeness restricted to selections of exactly `k` edges; smaller
/// selections are unconstrained. Vacuously free when the hypergraph has
/// fewer than `k` edges or fewer than `k - q - 1` vertices.
pub fn is_f_free(h: &Hypergraph, params: &ParamTriple) -> Result<FreenessVerdict, FreenessError> {
    let k = params.k();
    let q = params.q();
    if h.m() < k || h.n() < params.max_forbidden_order() {
        return Ok(FreenessVerdict::trivially_free());
    }

    // exact-size maximum; each further pick raises deficiency by at
    // most one, which gives the pruning bound
    struct Rec<'a> {
        h: &'a Hypergraph,
        k: usize,
        cover_count: Vec<u32>,
        cover_size: usize,
        sel: Vec<usize>,
        best: Option<Best>,
    }
    impl Rec<'_> {
        fn go(&mut self, from: usize) {
            if self.sel.len() == self.k {
                let def = self.sel.len() as i64 - self.cover_size as i64;
                if better(def, &self.sel, &self.best) {
                    self.best = Some(Best {
                        def,
                        indices: self.sel.clone(),
                    });
                }
                return;
            }
            let need = self.k - self.sel.len();
            if self.h.m() - from < need {
                return;
            }
            if let Some(b) = &self.best {
                let ub = self.sel.len() as i64 - self.cover_size as i64 + need as i64;
                if ub < b.def {
                    return;
                }
            }
            for e in from..self.h.m() {
                self.sel.push(e);
                for &v in &self.h.edges()[e] {
                    if self.cover_count[v] == 0 {
                        self.cover_size += 1;
                    }
                    self.cover_count[v] += 1;
                }
                self.go(e + 1);
                for &v in &self.h.edges()[e] {
                    self.cover_count[v] -= 1;
                    if self.cover_count[v] == 0 {
                        self.cover_size -= 1;
                    }
                }
                self.sel.pop();
            }
        }
    }

    let mut rec = Rec {
        h,
        k,
        cover_count: vec![0; h.n()],
        cover_size: 0,
        sel: Vec::new(),
        best: None,
    };
    rec.go(0);
    let best = rec.best.expect("m >= k guarantees a candidate");
    let free = best.def <= q;
    Ok(FreenessVerdict {
        free,
        witness: if free {
            None
        } else {
            Some(EdgeSelection::new(best.indices))
        },
        max_deficiency_found: Some(best.def),
    })
}

/// The batch-code property: every selection of at most `k` edges covers
/// at least as many vertices. Equivalent to freeness at `q = 0`, but
/// meaningful for every `k >= 1`.
pub fn is_cbc(h: &Hypergraph, k: usize) -> Result<FreenessVerdict, FreenessError> {
    if k == 0 {
        return Err(FreenessError::InvalidBudget);
    }
    let budget = realizable_budget(k, h.n(), 0);
    if h.m() == 0 || budget == 0 {
        return Ok(FreenessVerdict::trivially_free());
    }
    let (def, witness) = max_deficiency(h, budget)?;
    let free = def <= 0;
    Ok(FreenessVerdict {
        free,
        witness: if free { None } else { Some(witness) },
        max_deficiency_found: Some(def),
    })
}

/// Match each requested item (edge index) to a distinct vertex of its
/// own edge, by maximum bipartite matching with lowest-index augmenting
/// order. A failed request returns the Hall violator: a sub-request
/// covering fewer vertices than its size.
pub fn sdr_retrieve(
    h: &Hypergraph,
    items: &EdgeSelection,
) -> Result<RetrievalPlan, FreenessError> {
    for index in items.iter() {
        if index >= h.m() {
            return Err(FreenessError::BadRequest { index, m: h.m() });
        }
    }
    let requests: Vec<usize> = items.to_vec();
    let left = requests.len();

    // right side: vertices incident to the request, densely renumbered
    let mut vertex_id: BTreeMap<usize, usize> = BTreeMap::new();
    for &e in &requests {
        for &v in &h.edges()[e] {
            let next = vertex_id.len();
            vertex_id.entry(v).or_insert(next);
        }
    }
    let vertices: Vec<usize> = vertex_id.keys().copied().collect();
    let right = vertices.len();
    let adj: Vec<Vec<usize>> = requests
        .iter()
        .map(|&e| h.edges()[e].iter().map(|v| vertex_id[v]).collect())
        .collect();

    let (match_l, _match_r) = hopcroft_karp(left, right, &adj);

    if let Some(start) = (0..left).find(|&u| match_l[u].is_none()) {
        // alternating reachability from an unmatched request exposes a
        // deficient sub-request
        let mut match_r = vec![None; right];
        for (u, mv) in match_l.iter().enumerate() {
            if let Some(v) = mv {
                match_r[*v] = Some(u);
            }
        }
        let mut seen_l = vec![false; left];
        let mut seen_r = vec![false; right];
        let mut stack = vec![start];
        seen_l[start] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen_r[v] {
                    seen_r[v] = true;
                    if let Some(u2) = match_r[v] {
                        if !seen_l[u2] {
                            seen_l[u2] = true;
                            stack.push(u2);
                        }
                    }
                }
            }
        }
        let violator =
            EdgeSelection::new((0..left).filter(|&u| seen_l[u]).map(|u| requests[u]));
        return Err(FreenessError::NoSdr { violator });
    }

    let assignment = requests
        .iter()
        .enumerate()
        .map(|(u, &e)| (e, vertices[match_l[u].expect("all matched")]))
        .collect();
    Ok(RetrievalPlan { assignment })
}

/// Maximum bipartite matching (layered BFS phases with DFS
/// augmentation). Adjacency lists are scanned in order, so the result
/// is deterministic.
fn hopcroft_karp(
    left: usize,
    right: usize,
    adj: &[Vec<usize>],
) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let mut match_l: Vec<Option<usize>> = vec![None; left];
    let mut match_r: Vec<Option<usize>> = vec![None; right];

    loop {
        // BFS layering from unmatched left nodes
        let mut dist: Vec<Option<u32>> = vec![None; left];
        let mut queue: std::collections::VecDeque<usize> = (0..left)
            .filter(|&u| match_l[u].is_none())
            .inspect(|&u| dist[u] = Some(0))
            .collect();
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_r[v] {
                    None => reachable_free = true,
                    Some(u2) => {
                        if dist[u2].is_none() {
                            dist[u2] = Some(dist[u].unwrap() + 1);
                            queue.push_back(u2);
                        }
                    }
                }
            }
        }
        if !reachable_free {
            break;
        }

        fn augment(
            u: usize,
            adj: &[Vec<usize>],
            dist: &mut [Option<u32>],
            match_l: &mut [Option<usize>],
            match_r: &mut [Option<usize>],
        ) -> bool {
            let d = dist[u].take();
            for &v in &adj[u] {
                let ok = match match_r[v] {
                    None => true,
                    Some(u2) => {
                        dist[u2] == d.map(|x| x + 1)
                            && augment(u2, adj, dist, match_l, match_r)
                    }
                };
                if ok {
                    match_l[u] = Some(v);
                    match_r[v] = Some(u);
                    return true;
                }
            }
            false
        }

        let mut advanced = false;
        for u in 0..left {
            if match_l[u].is_none() && dist[u] == Some(0) {
                advanced |= augment(u, adj, &mut dist, &mut match_l, &mut match_r);
            }
        }
        if !advanced {
            break;
        }
    }
    (match_l, match_r)
}
