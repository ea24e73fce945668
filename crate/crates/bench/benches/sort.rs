use std::num::NonZeroUsize;

use bucketbubble::{tokenize, LayoutKind, SchedulePolicy, SortConfig, SortVariant, Store};
use bucketbubble_bench::{small_corpus, text};
use criterion::{black_box, criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion, Throughput};

fn layouts(c: &mut Criterion) {
    let words = small_corpus();
    let mut group = c.benchmark_group("sequential");
    for layout in LayoutKind::ALL {
        for variant in SortVariant::ALL {
            group.bench_function(BenchmarkId::new(layout.as_str(), variant), |b| {
                b.iter_batched(
                    || Store::build(layout, &words),
                    |mut store| black_box(store.sort_sequential(variant)),
                    BatchSize::LargeInput,
                )
            });
        }
    }
    group.finish();
}

fn threads(c: &mut Criterion) {
    let words = small_corpus();
    let mut group = c.benchmark_group("parallel_flat");
    for schedule in SchedulePolicy::ALL {
        for threads in [1usize, 2, 4, 8] {
            let config = SortConfig::sequential(LayoutKind::Flat)
                .with_threads(NonZeroUsize::new(threads).unwrap());
            let config = SortConfig { schedule, ..config };
            group.bench_with_input(BenchmarkId::new(schedule.as_str(), threads), &config, |b, config| {
                b.iter_batched(
                    || Store::build(LayoutKind::Flat, &words),
                    |mut store| black_box(store.sort_parallel(config)),
                    BatchSize::LargeInput,
                )
            });
        }
    }
    group.finish();
}

fn ingest(c: &mut Criterion) {
    let raw = text(1 << 20);
    let mut group = c.benchmark_group("ingest");
    group.throughput(Throughput::Bytes(raw.len() as u64));
    group.bench_function("tokenize", |b| b.iter(|| black_box(tokenize(&raw))));
    let words = tokenize(&raw);
    for layout in LayoutKind::ALL {
        group.bench_function(BenchmarkId::new("build", layout), |b| {
            b.iter(|| black_box(Store::build(layout, &words)))
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = layouts, threads, ingest
}
criterion_main!(benches);
