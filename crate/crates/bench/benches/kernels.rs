use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minranklab::graph::{chromatic_number, independence_number, read_graph6, write_graph6};
use minranklab::kneser::{representation_matrix, KneserParams};
use minranklab::{minrank_exact, Budget, FieldMatrix, Graph, PrimeField, RationalMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_entries(len: usize, modulus: i64, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.random_range(0..modulus)).collect()
}

fn field_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("field_rank");
    for (p, n) in [(2u64, 64usize), (2, 256), (3, 64), (3, 256)] {
        let f = PrimeField::new(p).unwrap();
        let m = FieldMatrix::from_entries(f, n, n, &random_entries(n * n, p as i64, 1)).unwrap();
        group.bench_with_input(BenchmarkId::new(format!("gf{p}"), n), &m, |b, m| b.iter(|| m.rank()));
    }
    group.finish();
}

fn bareiss_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("bareiss_rank");
    group.sample_size(10);
    for n in [16usize, 32, 64] {
        let m = RationalMatrix::from_integers(n, n, &random_entries(n * n, 7, 2)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| m.rank()));
    }
    group.finish();
}

fn exact_minrank(c: &mut Criterion) {
    let mut group = c.benchmark_group("minrank_exact");
    group.sample_size(10);
    let cases = [
        ("C5", Graph::cycle(5).unwrap()),
        ("C7", Graph::cycle(7).unwrap()),
        ("C6-complement", Graph::cycle(6).unwrap().complement()),
    ];
    for (name, g) in cases {
        for p in [2u64, 3] {
            let f = PrimeField::new(p).unwrap();
            group.bench_function(BenchmarkId::new(name, format!("gf{p}")), |b| {
                b.iter(|| minrank_exact(black_box(&g), f, &Budget::default()).unwrap().value)
            });
        }
    }
    group.finish();
}

fn graph_search(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = Graph::from_pair_code(11, rng.random::<u64>() & ((1 << 55) - 1));
    c.bench_function("independence_number/n11", |b| {
        b.iter(|| independence_number(black_box(&g)))
    });
    c.bench_function("chromatic_number/n11", |b| b.iter(|| chromatic_number(black_box(&g))));
    let text = write_graph6(&g);
    c.bench_function("graph6_roundtrip/n11", |b| {
        b.iter(|| read_graph6(black_box(&text)).unwrap())
    });
}

fn kneser_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("kneser_build");
    group.sample_size(10);
    for (d, m) in [(8usize, 1usize), (10, 1), (10, 2)] {
        let params = KneserParams::new(d, d / 2, m).unwrap();
        group.bench_function(format!("K({d},{},{m})", d / 2), |b| {
            b.iter(|| representation_matrix(params).unwrap().factor_subsets.len())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    field_rank,
    bareiss_rank,
    exact_minrank,
    graph_search,
    kneser_build
);
criterion_main!(benches);
