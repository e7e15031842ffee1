use craftgen_bench::synthetic_dataset;
use craftgen_core::pruning::{predict, train_gbm, GbmHyperparams};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn gbm(c: &mut Criterion) {
    let data = synthetic_dataset(1000, 5);
    let hp = GbmHyperparams::default();
    let mut group = c.benchmark_group("gbm");
    group.sample_size(10);
    group.bench_function("fit/1000 samples 100 trees", |b| b.iter(|| train_gbm(black_box(&data), &hp, 5).unwrap()));
    let model = train_gbm(&data, &hp, 5).unwrap();
    group.bench_function("predict/1000 designs", |b| {
        b.iter(|| data.iter().map(|d| predict(&model, &d.features).unwrap()).sum::<f64>())
    });
    group.finish();
}

criterion_group!(benches, gbm);
criterion_main!(benches);
