use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use cayley_sigraph::analysis::{check_balance, check_clusterability, check_sign_compatibility};
use cayley_sigraph::cayley::{build_sigraph, validate_spec};
use cayley_sigraph::oracle::enumerate_simple_cycles;

const INSTANCES: [(u64, u64); 4] = [(2, 60), (3, 39), (5, 20), (7, 14)];

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_sigraph");
    for (p, n) in INSTANCES {
        let spec = validate_spec(p, n).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{p}x{n}")),
            &spec,
            |b, spec| b.iter(|| build_sigraph(black_box(spec))),
        );
    }
    group.finish();
}

fn deciders(c: &mut Criterion) {
    let mut group = c.benchmark_group("deciders");
    for (p, n) in INSTANCES {
        let g = build_sigraph(&validate_spec(p, n).unwrap());
        let id = format!("{p}x{n}");
        group.bench_with_input(BenchmarkId::new("balance", &id), &g, |b, g| {
            b.iter(|| check_balance(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("clusterability", &id), &g, |b, g| {
            b.iter(|| check_clusterability(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("sign_compatibility", &id), &g, |b, g| {
            b.iter(|| check_sign_compatibility(black_box(g)))
        });
    }
    group.finish();
}

fn line_sigraph(c: &mut Criterion) {
    let mut group = c.benchmark_group("line_sigraph");
    for (p, n) in INSTANCES {
        let g = build_sigraph(&validate_spec(p, n).unwrap());
        group.bench_with_input(
            BenchmarkId::new("build_and_balance", format!("{p}x{n}")),
            &g,
            |b, g| b.iter(|| check_balance(&black_box(g).line_sigraph())),
        );
    }
    group.finish();
}

fn cycle_oracle(c: &mut Criterion) {
    let g = build_sigraph(&validate_spec(3, 3).unwrap());
    c.bench_function("enumerate_simple_cycles/3x3", |b| {
        b.iter(|| enumerate_simple_cycles(black_box(&g), 12).unwrap())
    });
}

criterion_group!(benches, construction, deciders, line_sigraph, cycle_oracle);
criterion_main!(benches);
