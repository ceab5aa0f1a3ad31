use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use harary_tds::{
    build_harary, solve_exact, sweep, Execution, HararyParams, Method, SolveOptions, SweepConfig,
};

const EXECUTIONS: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for (d, n, method) in [
        (3, 20, Method::Brute),
        (3, 24, Method::Bnb),
        (5, 26, Method::Bnb),
    ] {
        let g = build_harary(&HararyParams::new(d, n).unwrap());
        for (name, exec) in EXECUTIONS {
            let opts = SolveOptions::new(method).execution(exec);
            group.bench_with_input(
                BenchmarkId::new(format!("{method}/{name}"), format!("H{d},{n}")),
                &g,
                |b, g| b.iter(|| solve_exact(black_box(g), 2, &opts).unwrap()),
            );
        }
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (name, exec) in EXECUTIONS {
        let mut cfg = SweepConfig::new(3..=15, 4..=16, 2);
        cfg.execution = exec;
        group.bench_function(name, |b| b.iter(|| sweep(black_box(&cfg)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, solver, sweeps);
criterion_main!(benches);
