//! Deterministic sharded execution: work is cut into fixed-size shards whose
//! boundaries depend only on the item count, each shard is computed as a
//! unit, and results are folded in shard order. The outcome is therefore
//! bit-identical for every worker count.

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Maps `f` over fixed shards of `0..n` and returns the per-shard results in
/// shard order.
pub fn map_shards<T, F>(n: u64, shard_size: u64, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    assert!(shard_size > 0);
    let shard_count = (n.div_ceil(shard_size)) as usize;
    let bounds = |i: usize| -> Range<u64> {
        let lo = i as u64 * shard_size;
        lo..(lo + shard_size).min(n)
    };
    if threads <= 1 || shard_count <= 1 {
        return (0..shard_count).map(|i| f(bounds(i))).collect();
    }
    let results: Vec<Mutex<Option<T>>> = (0..shard_count).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads.min(shard_count) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= shard_count {
                    break;
                }
                let out = f(bounds(i));
                *results[i].lock().unwrap() = Some(out);
            });
        }
    });
    results
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("shard completed"))
        .collect()
}

/// Folds shard results of `f64` pair accumulators in shard order.
pub fn sum_shards<F>(n: u64, shard_size: u64, threads: usize, f: F) -> (f64, f64)
where
    F: Fn(Range<u64>) -> (f64, f64) + Sync,
{
    map_shards(n, shard_size, threads, f)
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y))
}
