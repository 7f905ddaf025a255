//! Sequential versus rayon-parallel timings for the data-parallel entry
//! points: corpus verification, diagram construction, and catalog
//! enumeration.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use traintrack::corpus::{numeral_table, verify_corpus};
use traintrack::diagram::build_id_diagram_with;
use traintrack::exec::ExecMode;
use traintrack::whitehead::enumerate_catalog_with;

fn bench_corpus_verification(c: &mut Criterion) {
    // Warm the lazily built numeral table so both arms measure the same
    // work.
    let _ = numeral_table();
    let mut group = c.benchmark_group("verify_corpus");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(verify_corpus(ExecMode::Sequential)))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(verify_corpus(ExecMode::Parallel)))
    });
    group.finish();
}

fn bench_diagram_build(c: &mut Criterion) {
    let shape = numeral_table().graph_of("XVIII").unwrap().clone();
    let mut group = c.benchmark_group("diagram_build_xviii");
    group.sample_size(20);
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(build_id_diagram_with(&shape, 3, ExecMode::Sequential).unwrap()))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(build_id_diagram_with(&shape, 3, ExecMode::Parallel).unwrap()))
    });
    group.finish();
}

fn bench_catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog_n7");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(enumerate_catalog_with(7, ExecMode::Sequential)))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(enumerate_catalog_with(7, ExecMode::Parallel)))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_corpus_verification,
    bench_diagram_build,
    bench_catalog
);
criterion_main!(benches);
