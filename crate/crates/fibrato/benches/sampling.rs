use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fibrato::moduli::{stratify, StratifyOptions};
use fibrato::parallel::Execution;

fn stratify_exec(c: &mut Criterion) {
    let mut group = c.benchmark_group("stratify");
    group.sample_size(10);
    for samples in [1_000usize, 10_000] {
        for (name, exec) in [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)] {
            let opts = StratifyOptions { samples, lines: samples / 100, exec, ..Default::default() };
            group.bench_with_input(BenchmarkId::new(name, samples), &opts, |b, o| {
                b.iter(|| stratify(black_box(o)).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, stratify_exec);
criterion_main!(benches);
