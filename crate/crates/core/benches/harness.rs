use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nmtree::harness::{run_property_with, Execution, GeneratorConfig, RunOptions};

fn execution_modes(c: &mut Criterion) {
    let config = GeneratorConfig::default().with_seed(7).with_samples(200);
    let mut group = c.benchmark_group("harness");
    group.sample_size(10);
    for property in ["meet-glb", "lemma-segment-triangle", "decider-agreement"] {
        for (label, execution) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            let options = RunOptions {
                execution,
                inject_fault: false,
            };
            group.bench_with_input(BenchmarkId::new(label, property), &property, |b, name| {
                b.iter(|| {
                    let report = run_property_with(name, &config, options).unwrap();
                    assert!(report.passed());
                    black_box(report.cases)
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, execution_modes);
criterion_main!(benches);
