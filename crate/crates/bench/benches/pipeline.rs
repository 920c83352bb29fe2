use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use hazelab_bench::{bench_hazy, bench_scene};
use hazelab_core::{
    audit_dehazed, data_term, dehaze, procedural_depth, run_stage, synthesize, DepthMode,
    ScatteringState, StageConfig, SynthesisSpec,
};

fn bench_single_stage(c: &mut Criterion) {
    let mut group = c.benchmark_group("stage");
    for size in [128usize, 256] {
        let (_, syn) = bench_hazy(1, size, size);
        let state = ScatteringState::initial(&syn.hazy);
        let config = StageConfig::default();
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| run_stage(black_box(&syn.hazy), black_box(&state), &config).unwrap())
        });
    }
    group.finish();
}

fn bench_full_dehaze(c: &mut Criterion) {
    let mut group = c.benchmark_group("dehaze");
    for size in [128usize, 256] {
        let (_, syn) = bench_hazy(2, size, size);
        let config = StageConfig::default();
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| dehaze(black_box(&syn.hazy), &config).unwrap())
        });
    }
    group.finish();
}

fn bench_synthesize(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize");
    for size in [128usize, 256] {
        let clean = bench_scene(3, size, size);
        let depth = procedural_depth(DepthMode::Radial, size, size);
        let spec = SynthesisSpec {
            seed: 3,
            ..SynthesisSpec::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| synthesize(black_box(&clean), black_box(&depth), &spec).unwrap())
        });
    }
    group.finish();
}

fn bench_audit(c: &mut Criterion) {
    let mut group = c.benchmark_group("audit");
    for size in [128usize, 256] {
        let (_, syn) = bench_hazy(4, size, size);
        let config = StageConfig::default();
        let (state, _) = dehaze(&syn.hazy, &config).unwrap();
        let dehazed = state.radiance.map(|p| {
            [
                p[0].clamp(0.0, 1.0),
                p[1].clamp(0.0, 1.0),
                p[2].clamp(0.0, 1.0),
            ]
        });
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| audit_dehazed(black_box(&dehazed), &config).unwrap())
        });
    }
    group.finish();
}

fn bench_data_term(c: &mut Criterion) {
    let (_, syn) = bench_hazy(5, 256, 256);
    let state = ScatteringState::initial(&syn.hazy);
    c.bench_function("data_term/256", |b| {
        b.iter(|| data_term(black_box(&syn.hazy), black_box(&state)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_single_stage,
    bench_full_dehaze,
    bench_synthesize,
    bench_audit,
    bench_data_term
);
criterion_main!(benches);
