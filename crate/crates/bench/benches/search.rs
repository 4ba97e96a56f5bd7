use criterion::{black_box, criterion_group, criterion_main, Criterion};

use turan_batch::construct::{random_construct, DeletionPolicy};
use turan_batch::exact::{exact_ex, SearchMode};
use turan_batch::freeness::{is_free, max_deficiency, sdr_retrieve};
use turan_batch::hypergraph::EdgeSelection;
use turan_batch::params::validate_params;
use turan_batch::random::random_uniform;

fn bench_max_deficiency(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_deficiency");
    for (n, p) in [(20usize, 0.3), (40, 0.15)] {
        let h = random_uniform(n, 2, p, 7).unwrap();
        group.bench_function(format!("n{n}_m{}", h.m()), |b| {
            b.iter(|| max_deficiency(black_box(&h), 6).unwrap())
        });
    }
    let dense = random_uniform(12, 3, 0.25, 11).unwrap();
    group.bench_function(format!("r3_n12_m{}", dense.m()), |b| {
        b.iter(|| max_deficiency(black_box(&dense), 6).unwrap())
    });
    group.finish();
}

fn bench_is_free(c: &mut Criterion) {
    let params = validate_params(2, 6, 0).unwrap();
    let free = random_construct(40, &params, 2.0, 3, DeletionPolicy::WitnessMaxDegree)
        .unwrap()
        .result;
    c.bench_function("is_free_n40_free_input", |b| {
        b.iter(|| is_free(black_box(&free), &params).unwrap())
    });
}

fn bench_construct(c: &mut Criterion) {
    let params = validate_params(2, 6, 0).unwrap();
    c.bench_function("random_construct_n40", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed += 1;
            random_construct(40, &params, 2.0, seed, DeletionPolicy::WitnessMaxDegree).unwrap()
        })
    });
}

fn bench_exact(c: &mut Criterion) {
    c.bench_function("exact_ex_n7_bnb", |b| {
        b.iter(|| exact_ex(7, 2, 6, 0, SearchMode::BranchAndBound).unwrap())
    });
}

fn bench_decode(c: &mut Criterion) {
    let h = random_uniform(30, 2, 0.3, 5).unwrap();
    let request = EdgeSelection::new(0..6.min(h.m()));
    c.bench_function("sdr_retrieve_6_items", |b| {
        b.iter(|| sdr_retrieve(black_box(&h), &request).unwrap())
    });
}

criterion_group!(
    benches,
    bench_max_deficiency,
    bench_is_free,
    bench_construct,
    bench_exact,
    bench_decode
);
criterion_main!(benches);
