use criterion::{criterion_group, criterion_main, Criterion};
use qdf_core::search::{
    enumerate_dfbq, enumerate_latin, enumerate_latin_par, find_difference_families, Dedup, Mode, SearchParams,
};

fn latin(c: &mut Criterion) {
    let mut g = c.benchmark_group("latin");
    g.sample_size(10);
    g.bench_function("n5_sequential", |b| b.iter(|| enumerate_latin(5, |_| {}).unwrap().count));
    g.bench_function("n5_jobs4", |b| b.iter(|| enumerate_latin_par(5, 4, |_| {}).unwrap().count));
    g.finish();
}

fn dfbq(c: &mut Criterion) {
    let mut g = c.benchmark_group("dfbq");
    g.sample_size(10);
    for (n, mode) in [(3, Mode::Brute), (4, Mode::Brute), (4, Mode::Constructive), (5, Mode::Constructive)] {
        g.bench_function(format!("n{n}_{mode}"), |b| b.iter(|| enumerate_dfbq(n, mode, |_| {}).unwrap().count));
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let d = qdf_bench::twisted_cyclic(13);
    let params = SearchParams::new(4, 1, 1, Dedup::ByDevelopment).unwrap();
    c.bench_function("search_df_z13_k4", |b| b.iter(|| find_difference_families(&d, &params).families.len()));
}

criterion_group!(benches, latin, dfbq, search);
criterion_main!(benches);
