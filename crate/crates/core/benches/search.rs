//! Throughput of the exhaustive search, sequential against the rayon
//! fan-out, plus the palindromic-tree push/pop hot path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use richsf::pal::PalIndex;
use richsf::search::{compute_r, SearchConfig};
use richsf::word::Letter;

fn bench_compute_r(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_r");
    group.sample_size(10);
    for n in [4u32, 5] {
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| compute_r(&SearchConfig::new(n)));
        });
        #[cfg(feature = "parallel")]
        for workers in [2usize, 8] {
            group.bench_with_input(
                BenchmarkId::new(format!("parallel-{workers}"), n),
                &n,
                |b, &n| {
                    b.iter(|| compute_r(&SearchConfig::new(n).with_workers(workers)));
                },
            );
        }
    }
    group.finish();
}

fn bench_push_pop(c: &mut Criterion) {
    // deepen/retract cycles over a fixed rich word, the search's inner loop
    let word: Vec<Letter> = richsf::construct_w(9, &richsf::LengthCap::default())
        .unwrap()
        .w
        .letters()
        .to_vec();
    c.bench_function("pal_index/push_pop_w9", |b| {
        b.iter(|| {
            let mut idx = PalIndex::new(9);
            for &a in &word {
                idx.push(a);
            }
            let count = idx.palindrome_count();
            for _ in 0..word.len() {
                idx.pop().unwrap();
            }
            count
        });
    });
}

criterion_group!(benches, bench_compute_r, bench_push_pop);
criterion_main!(benches);
