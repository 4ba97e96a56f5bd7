//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its headline numbers. Golden constants were produced by the
//! brute-force oracle ahead of time and are frozen here.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use turan_batch::bounds;
use turan_batch::construct::{random_construct, DeletionPolicy};
use turan_batch::exact::{self, SearchMode};
use turan_batch::freeness::{
    is_cbc, is_free, max_deficiency, max_deficiency_bruteforce, sdr_retrieve,
};
use turan_batch::hypergraph::EdgeSelection;
use turan_batch::io::write_hypergraph;
use turan_batch::params::validate_params;
use turan_batch::structure;
use turan_batch::Hypergraph;

/// Exact extremal values for (r, k, q) = (2, 6, 0) at n = 6, 7, 8,
/// frozen from the exhaustive oracle (n <= 7) and the branch-and-bound
/// search cross-validated against it.
const GOLDEN_EX_260: [(usize, usize); 3] = [(6, 7), (7, 9), (8, 12)];
const GOLDEN_F_260: [(usize, usize); 3] = [(6, 7), (7, 9), (8, 12)];
/// Tuning constant for (2, 6, 0) at n = 40 over seeds 0..30, frozen
/// from the first tuning run.
const GOLDEN_C_260: f64 = 2.0;

fn pass(criterion: usize, label: &str, detail: String) {
    println!("criterion {criterion} ({label}): PASS ({detail})");
}

fn all_pairs(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(vec![a, b]);
        }
    }
    out
}

fn all_triples(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

fn graph_from_mask(n: usize, r: usize, pool: &[Vec<usize>], mask: u64) -> Hypergraph {
    let edges: Vec<Vec<usize>> = pool
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, e)| e.clone())
        .collect();
    Hypergraph::new(n, r, edges, false).expect("pool edges are valid")
}

fn assert_oracle_match(h: &Hypergraph, k: usize, mismatches: &mut usize, checked: &mut u64) {
    let fast = max_deficiency(h, k).expect("nonempty");
    let slow = max_deficiency_bruteforce(h, k).expect("nonempty");
    if fast.0 != slow.0 {
        eprintln!("value mismatch at k={k}: fast {} slow {} on {h:?}", fast.0, slow.0);
        *mismatches += 1;
    }
    // the returned maximizer must attain the value
    if h.deficiency(&fast.1).expect("valid witness") != fast.0 {
        eprintln!("invalid witness on {h:?}");
        *mismatches += 1;
    }
    *checked += 1;
}

#[test]
fn criterion_1_freeness_oracle_equivalence() {
    let started = std::time::Instant::now();
    let mut mismatches = 0usize;
    let mut checked = 0u64;

    // exhaustive grids, split into disjoint mask ranges per worker
    let workers = std::thread::available_parallelism().map_or(2, |p| p.get());
    let chunk = |total: u64, w: usize, i: usize| {
        let per = total.div_ceil(w as u64);
        (per * i as u64)..(per * (i + 1) as u64).min(total)
    };

    // every simple graph on up to 6 vertices
    for n in 2..=6usize {
        let pool = all_pairs(n);
        let total = 1u64 << pool.len();
        let results = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|i| {
                    let pool = &pool;
                    let range = chunk(total, workers, i);
                    scope.spawn(move || {
                        let (mut bad, mut seen) = (0usize, 0u64);
                        for mask in range {
                            if mask == 0 {
                                continue;
                            }
                            let h = graph_from_mask(n, 2, pool, mask);
                            assert_oracle_match(&h, 6, &mut bad, &mut seen);
                            if n <= 5 {
                                assert_oracle_match(&h, 3, &mut bad, &mut seen);
                            }
                        }
                        (bad, seen)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect::<Vec<_>>()
        });
        for (bad, seen) in results {
            mismatches += bad;
            checked += seen;
        }
    }

    // every 3-uniform hypergraph on up to 6 vertices with at most 12
    // edges
    for n in 3..=6usize {
        let pool = all_triples(n);
        let total = 1u64 << pool.len();
        let results = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|i| {
                    let pool = &pool;
                    let range = chunk(total, workers, i);
                    scope.spawn(move || {
                        let (mut bad, mut seen) = (0usize, 0u64);
                        for mask in range {
                            if mask == 0 || mask.count_ones() > 12 {
                                continue;
                            }
                            let h = graph_from_mask(n, 3, pool, mask);
                            assert_oracle_match(&h, 6, &mut bad, &mut seen);
                        }
                        (bad, seen)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect::<Vec<_>>()
        });
        for (bad, seen) in results {
            mismatches += bad;
            checked += seen;
        }
    }

    // 500 random multihypergraphs
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0001);
    for _ in 0..500 {
        let r = if rng.gen_bool(0.5) { 2 } else { 3 };
        let n = rng.gen_range(r + 1..=7usize);
        let m = rng.gen_range(1..=12usize);
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let mut edge: Vec<usize> = Vec::new();
            while edge.len() < r {
                let v = rng.gen_range(0..n);
                if !edge.contains(&v) {
                    edge.push(v);
                }
            }
            edges.push(edge);
        }
        let h = Hypergraph::new(n, r, edges, true).unwrap();
        let k = rng.gen_range(1..=h.m());
        assert_oracle_match(&h, k, &mut mismatches, &mut checked);
    }

    assert_eq!(mismatches, 0);
    pass(
        1,
        "freeness oracle equivalence",
        format!("{checked} instances, 0 mismatches, {:.1?}", started.elapsed()),
    );
}

#[test]
fn criterion_2_cbc_sdr_duality() {
    let started = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0002);
    let mut mismatches = 0usize;
    for _ in 0..200 {
        let r = if rng.gen_bool(0.5) { 2 } else { 3 };
        let n = rng.gen_range(r + 1..=7usize);
        let m = rng.gen_range(1..=10usize);
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let mut edge: Vec<usize> = Vec::new();
            while edge.len() < r {
                let v = rng.gen_range(0..n);
                if !edge.contains(&v) {
                    edge.push(v);
                }
            }
            edges.push(edge);
        }
        let h = Hypergraph::new(n, r, edges, true).unwrap();
        let k = rng.gen_range(1..=6usize);

        let cbc = is_cbc(&h, k).unwrap().free;
        // exhaustive requests of size at most k
        let mut all_decodable = true;
        for mask in 1u64..(1 << h.m()) {
            if mask.count_ones() as usize > k {
                continue;
            }
            let request =
                EdgeSelection::new((0..h.m()).filter(|i| mask & (1 << i) != 0));
            if sdr_retrieve(&h, &request).is_err() {
                all_decodable = false;
                break;
            }
        }
        if cbc != all_decodable {
            eprintln!("duality mismatch on {h:?} k={k}: cbc={cbc} decodable={all_decodable}");
            mismatches += 1;
        }
    }
    assert_eq!(mismatches, 0);
    pass(
        2,
        "batch-code / representative duality",
        format!("200 instances, 0 mismatches, {:.1?}", started.elapsed()),
    );
}

#[test]
fn criterion_3_construction_soundness() {
    let started = std::time::Instant::now();
    let mut runs = 0usize;
    let mut cells: Vec<(usize, usize, i64, usize)> = Vec::new();
    for r in [2usize, 3] {
        let n_grid: &[usize] = if r == 2 { &[16, 28, 40] } else { &[8, 12, 16] };
        for q in [-1i64, 0, 1] {
            let k_min = (q + r as i64 + 1) as usize;
            for k in k_min..=8 {
                for &n in n_grid {
                    cells.push((r, k, q, n));
                }
            }
        }
    }
    // 99 cells x 10 seeds, plus 10 extra runs on the flagship cell
    for &(r, k, q, n) in &cells {
        let params = validate_params(r, k, q).unwrap();
        for seed in 0..10u64 {
            let report = random_construct(n, &params, 0.5, seed, DeletionPolicy::WitnessMaxDegree)
                .unwrap();
            // independent certification through the witness hunt
            assert!(
                turan_batch::freeness::find_forbidden_witness(&report.result, &params)
                    .unwrap()
                    .is_none(),
                "non-free output at r={r} k={k} q={q} n={n} seed={seed}"
            );
            let again =
                random_construct(n, &params, 0.5, seed, DeletionPolicy::WitnessMaxDegree).unwrap();
            assert_eq!(
                write_hypergraph(&report.result),
                write_hypergraph(&again.result),
                "nondeterministic output at r={r} k={k} q={q} n={n} seed={seed}"
            );
            runs += 1;
        }
    }
    let params = validate_params(2, 6, 0).unwrap();
    for seed in 10..20u64 {
        let report =
            random_construct(40, &params, GOLDEN_C_260, seed, DeletionPolicy::WitnessMaxDegree)
                .unwrap();
        assert!(is_free(&report.result, &params).unwrap().free);
        runs += 1;
    }
    assert!(runs >= 1000);
    pass(
        3,
        "construction soundness",
        format!("{runs} runs, all free and byte-stable, {:.1?}", started.elapsed()),
    );
}

#[test]
fn criterion_4_sandwich_inequalities() {
    let started = std::time::Instant::now();
    let params = validate_params(2, 6, 0).unwrap();

    // the branch-and-bound values must reproduce the frozen oracle
    // values, and the exhaustive route must agree where it runs
    let bf6 = exact::exact_ex(6, 2, 6, 0, SearchMode::Bruteforce).unwrap();
    assert_eq!(bf6.value, GOLDEN_EX_260[0].1);

    for (n, golden) in GOLDEN_EX_260 {
        let res = exact::exact_ex(n, 2, 6, 0, SearchMode::BranchAndBound).unwrap();
        assert_eq!(res.value, golden, "exact value changed at n={n}");
        assert!(is_free(&res.witness, &params).unwrap().free);

        let upper = bounds::graph_upper(n, 6, 0).unwrap();
        assert!(
            (res.value as f64) < upper,
            "upper bound not strict at n={n}: {} vs {upper}",
            res.value
        );

        for seed in 0..6u64 {
            let report =
                random_construct(n, &params, GOLDEN_C_260, seed, DeletionPolicy::WitnessMaxDegree)
                    .unwrap();
            assert!(
                report.retained_edges() <= golden,
                "construction beat the exact value at n={n}"
            );
        }
    }
    pass(
        4,
        "sandwich inequalities",
        format!(
            "(2,6,0) n=6..8: construct <= {:?} < upper bound, {:.1?}",
            GOLDEN_EX_260.map(|(_, v)| v),
            started.elapsed()
        ),
    );
}

#[test]
fn criterion_5_difference_bound() {
    let started = std::time::Instant::now();
    let table = exact::difference_table(2, 6, 0, 6..=8, SearchMode::BranchAndBound).unwrap();
    assert_eq!(table.rows.len(), 3);
    for (row, ((n_ex, golden_ex), (n_f, golden_f))) in
        table.rows.iter().zip(GOLDEN_EX_260.iter().zip(GOLDEN_F_260.iter()))
    {
        assert_eq!(row.n, *n_ex);
        assert_eq!(row.n, *n_f);
        assert_eq!(row.exact_ex, *golden_ex);
        assert_eq!(row.exact_f, *golden_f);
        assert!(row.within_bound, "difference bound violated at n={}", row.n);
    }
    // graph case: the gap stays below the constant that the structural
    // decomposition yields from exact values up to each order
    let d_floor = table.empirical_d_floor.unwrap();
    for row in &table.rows {
        let d_est = bounds::d_constant_estimate(6, 0, row.n).unwrap();
        assert!(
            (row.difference as f64) <= d_est,
            "difference {} above the structural constant {d_est} at n={}",
            row.difference,
            row.n
        );
    }

    // hypergraph case at the largest feasible order
    let table3 = exact::difference_table(3, 5, 0, 8..=8, SearchMode::BranchAndBound).unwrap();
    assert!(table3.rows[0].within_bound);
    assert_eq!(table3.rows[0].diff_upper, Some(4 * 21));

    pass(
        5,
        "difference bound",
        format!(
            "r=2 differences {:?} (d floor {d_floor}), r=3 n=8 difference {}, {:.1?}",
            table.rows.iter().map(|r| r.difference).collect::<Vec<_>>(),
            table3.rows[0].difference,
            started.elapsed()
        ),
    );
}

#[test]
fn criterion_6_link_reduction() {
    let started = std::time::Instant::now();
    let params = validate_params(3, 6, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0006);
    let mut violations = 0usize;
    let mut free_inputs = 0usize;
    for i in 0..300 {
        let n = rng.gen_range(5..=12usize);
        let p = rng.gen_range(0.02..0.25);
        let h = turan_batch::random::random_uniform(n, 3, p, 0xACCE_0600 + i).unwrap();
        let cert = structure::best_link(&h, &params).unwrap();
        // |E(link)| * C(n, 1) >= m * C(3, 1), exactly
        if cert.link_degree * h.n() < h.m() * 3 {
            eprintln!("counting inequality failed on {h:?}");
            violations += 1;
        }
        assert!(cert.inequality_holds);
        match cert.freeness_transfer {
            structure::CheckOutcome::Violated => {
                eprintln!("freeness transfer failed on {h:?}");
                violations += 1;
            }
            structure::CheckOutcome::Holds => free_inputs += 1,
            structure::CheckOutcome::NotEngaged => {}
        }
    }
    assert!(free_inputs > 0, "the sample must contain free inputs");

    // equality instance: the complete 3-graph on five vertices
    let complete = Hypergraph::complete(5, 3);
    let cert = structure::best_link(&complete, &params).unwrap();
    assert_eq!(cert.link_degree, 6);
    assert!((cert.inequality_lhs - 6.0).abs() < 1e-12);

    assert_eq!(violations, 0);
    pass(
        6,
        "link reduction",
        format!(
            "300 instances, {free_inputs} free transfers, equality at the complete 3-graph, {:.1?}",
            started.elapsed()
        ),
    );
}

#[test]
fn criterion_7_proof_procedure_certificates() {
    let started = std::time::Instant::now();

    // peeling: 500 random graphs
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0007);
    let mut peeled = 0usize;
    while peeled < 500 {
        let n = rng.gen_range(4..=14usize);
        let p = rng.gen_range(0.1..0.7);
        let g = turan_batch::random::random_uniform(n, 2, p, rng.gen()).unwrap();
        if g.m() == 0 {
            continue;
        }
        let cert = structure::peel_min_degree(&g).unwrap();
        assert!(
            cert.final_subgraph.m() > 0,
            "peeling emptied a graph with edges: {g:?}"
        );
        let thr = cert.threshold;
        assert!(
            (cert.final_min_degree as i64) * thr.den > thr.num,
            "final degree {} not above threshold {}/{} on {g:?}",
            cert.final_min_degree,
            thr.num,
            thr.den
        );
        peeled += 1;
    }

    // BFS level structure on free graphs produced by the construction,
    // peeled to raise the minimum degree, one certificate per root
    let mut engaged = 0usize;
    let mut certificates = 0usize;
    for (k, q) in [(6usize, 0i64), (8, 1)] {
        let params = validate_params(2, k, q).unwrap();
        for seed in 0..30u64 {
            let report =
                random_construct(24, &params, 1.0, seed, DeletionPolicy::WitnessMaxDegree)
                    .unwrap();
            for g in [report.result.clone(), {
                if report.result.m() == 0 {
                    continue;
                }
                structure::peel_min_degree(&report.result).unwrap().final_subgraph
            }] {
                if g.m() == 0 {
                    continue;
                }
                // certificates need connectivity from the root: work
                // per component
                let comps = g.components(&EdgeSelection::all(g.m())).unwrap();
                for comp in comps {
                    let sub = g.restrict_to(&comp).unwrap();
                    let root = sub.edges()[0][0];
                    let cert = structure::bfs_certificate(&sub, root, k, q).unwrap();
                    certificates += 1;
                    assert_ne!(
                        cert.checks.additional_degree,
                        structure::CheckOutcome::Violated
                    );
                    assert_ne!(cert.checks.level_growth, structure::CheckOutcome::Violated);
                    assert_ne!(cert.checks.order_bound, structure::CheckOutcome::Violated);
                    assert_eq!(cert.checks.level_distance, structure::CheckOutcome::Holds);
                    if cert.min_degree as i64 > q + 2 {
                        engaged += 1;
                    }
                }
            }
        }
    }
    pass(
        7,
        "proof-procedure certificates",
        format!(
            "500 peels, {certificates} bfs certificates ({engaged} engaged), 0 violations, {:.1?}",
            started.elapsed()
        ),
    );
}

#[test]
fn criterion_8_bound_evaluators() {
    let started = std::time::Instant::now();
    let mut points = 0usize;

    // specialization: the batch-code bound is the q = 0 hypergraph
    // bound
    for r in [2usize, 3, 4] {
        for k in [2 * r + 2, 2 * r + 3, 2 * r + 5, 3 * r + 4] {
            for n in [k, 2 * k, 50, 120, 400, 1000] {
                if n < k {
                    continue;
                }
                let params = validate_params(r, k, 0).unwrap();
                let a = bounds::cbc_upper(n, r, k).unwrap();
                let b = bounds::hypergraph_upper(n, &params).unwrap();
                assert!(
                    (a - b).abs() <= 1e-9 * a.abs().max(1.0),
                    "specialization identity failed at r={r} k={k} n={n}"
                );
                points += 1;
            }
        }
    }

    // substitution: the order-v form matches the graph bound under
    // q = k - v - 1
    for (k, q) in [(6usize, 0i64), (7, 0), (8, 1), (9, 1), (10, 2), (12, 3)] {
        let v = (k as i64 - q - 1) as usize;
        for n in [k, 20, 64, 150, 500, 1000] {
            if n < k {
                continue;
            }
            let a = bounds::f_upper_r2(n, v, k).unwrap();
            let b = bounds::graph_upper(n, k, q).unwrap();
            assert!(
                (a - b).abs() <= 1e-9 * a.abs().max(1.0),
                "substitution identity failed at k={k} q={q} n={n}"
            );
            points += 1;
        }
    }
    assert!(points >= 100, "grid has {points} points, need at least 100");

    // exponent table at r = 3, k = 8: 5/2 against 11/4, exact
    let ours = bounds::cbc_exponent(3, 8).unwrap();
    let competing = bounds::competing_exponent(3).unwrap();
    assert_eq!(ours, num_rational::Ratio::new(5, 2));
    assert_eq!(competing, num_rational::Ratio::new(11, 4));
    assert!(competing > ours);

    pass(
        8,
        "bound evaluators",
        format!("{points} identity points at 1e-9, exponents 5/2 vs 11/4, {:.1?}", started.elapsed()),
    );
}

#[test]
fn criterion_9_dichotomy() {
    let started = std::time::Instant::now();
    let mut checked = 0u64;
    for n in 4..=6usize {
        let pool = all_pairs(n);
        for mask in 0u64..(1 << pool.len()) {
            if mask.count_ones() as usize > structure::DICHOTOMY_EDGE_LIMIT {
                continue;
            }
            let g = graph_from_mask(n, 2, &pool, mask);
            for (k, q) in [(6usize, 0i64), (4, -1), (7, 1)] {
                if (n as i64) < k as i64 - q - 1 {
                    continue;
                }
                let violation = structure::verify_maximal_forbidden_dichotomy(&g, k, q).unwrap();
                assert_eq!(violation, None, "dichotomy violated on {g:?} at ({k},{q})");
                checked += 1;
            }
        }
    }
    pass(
        9,
        "maximal-forbidden dichotomy",
        format!("{checked} graph/parameter pairs, 0 violators, {:.1?}", started.elapsed()),
    );
}
