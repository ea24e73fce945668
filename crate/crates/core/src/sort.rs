//! Instrumented bubble sort of single buckets, and sequential and parallel
//! drivers over every bucket of a store.
//!
//! The parallel driver treats one whole bucket as the unit of work. Buckets
//! never share data, so each worker sorts its buckets with no locking and
//! keeps its own [`SortStats`]; the per-worker stats are summed after the
//! join.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::num::NonZeroUsize;
use std::ops::{Add, AddAssign};
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::store::{BucketStore, LayoutKind, SortableBucket};

/// Raw byte-wise comparison of two equal-length words.
#[inline]
pub fn compare_words(a: &[u8], b: &[u8]) -> Ordering {
    debug_assert_eq!(a.len(), b.len(), "bucket words must share a length");
    // Equal-length big-endian integers order exactly like their bytes.
    if a.len() <= 8 && b.len() <= 8 {
        be_prefix(a).cmp(&be_prefix(b))
    } else {
        a.cmp(b)
    }
}

#[inline]
fn be_prefix(s: &[u8]) -> u64 {
    s.iter().fold(0, |acc, &b| (acc << 8) | u64::from(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SortVariant {
    /// Full triangular schedule: exactly `n(n-1)/2` comparisons.
    #[default]
    Naive,
    /// Stops after the first pass that performs no swap.
    EarlyExit,
}

impl SortVariant {
    pub const ALL: [SortVariant; 2] = [SortVariant::Naive, SortVariant::EarlyExit];

    pub fn as_str(self) -> &'static str {
        match self {
            SortVariant::Naive => "naive",
            SortVariant::EarlyExit => "early-exit",
        }
    }
}

impl fmt::Display for SortVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for SortVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "naive" => Ok(SortVariant::Naive),
            "early-exit" => Ok(SortVariant::EarlyExit),
            _ => Err(Error::UnknownName {
                kind: "variant",
                value: s.to_owned(),
            }),
        }
    }
}

/// How buckets are handed to workers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchedulePolicy {
    /// Contiguous runs of buckets, one run per worker.
    #[default]
    #[serde(rename = "static")]
    StaticBlock,
    /// Bucket `i` goes to worker `i % workers`.
    #[serde(rename = "cyclic")]
    StaticCyclic,
    /// Workers pull the next unsorted bucket from a shared queue.
    Dynamic,
}

impl SchedulePolicy {
    pub const ALL: [SchedulePolicy; 3] = [
        SchedulePolicy::StaticBlock,
        SchedulePolicy::StaticCyclic,
        SchedulePolicy::Dynamic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SchedulePolicy::StaticBlock => "static",
            SchedulePolicy::StaticCyclic => "cyclic",
            SchedulePolicy::Dynamic => "dynamic",
        }
    }
}

impl fmt::Display for SchedulePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for SchedulePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "static" => Ok(SchedulePolicy::StaticBlock),
            "cyclic" => Ok(SchedulePolicy::StaticCyclic),
            "dynamic" => Ok(SchedulePolicy::Dynamic),
            _ => Err(Error::UnknownName {
                kind: "schedule",
                value: s.to_owned(),
            }),
        }
    }
}

/// Operation counts of one or more bucket sorts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SortStats {
    pub comparisons: u64,
    pub swaps: u64,
    pub passes: u64,
}

impl Add for SortStats {
    type Output = SortStats;

    fn add(self, rhs: SortStats) -> SortStats {
        SortStats {
            comparisons: self.comparisons + rhs.comparisons,
            swaps: self.swaps + rhs.swaps,
            passes: self.passes + rhs.passes,
        }
    }
}

impl AddAssign for SortStats {
    fn add_assign(&mut self, rhs: SortStats) {
        *self = *self + rhs;
    }
}

impl Sum for SortStats {
    fn sum<I: Iterator<Item = SortStats>>(iter: I) -> SortStats {
        iter.fold(SortStats::default(), Add::add)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SortConfig {
    pub layout: LayoutKind,
    pub variant: SortVariant,
    pub threads: NonZeroUsize,
    pub schedule: SchedulePolicy,
}

impl SortConfig {
    pub fn new(
        layout: LayoutKind,
        variant: SortVariant,
        threads: usize,
        schedule: SchedulePolicy,
    ) -> Result<Self, Error> {
        let threads = NonZeroUsize::new(threads).ok_or(Error::ZeroThreads)?;
        Ok(SortConfig {
            layout,
            variant,
            threads,
            schedule,
        })
    }

    /// Naive variant, static schedule, one thread.
    pub fn sequential(layout: LayoutKind) -> Self {
        SortConfig {
            layout,
            variant: SortVariant::Naive,
            threads: NonZeroUsize::MIN,
            schedule: SchedulePolicy::StaticBlock,
        }
    }

    pub fn with_threads(mut self, threads: NonZeroUsize) -> Self {
        self.threads = threads;
        self
    }
}

/// Bubble sorts one bucket in place, swapping adjacent elements only when the
/// left one is strictly greater (so equal words keep their order).
pub fn bubble_sort_bucket<B: SortableBucket + ?Sized>(bucket: &mut B, variant: SortVariant) -> SortStats {
    let n = bucket.len();
    let mut stats = SortStats::default();
    if n < 2 {
        return stats;
    }
    // After pass k the last k+1 slots hold their final elements.
    for pass in 0..n - 1 {
        let end = n - 1 - pass;
        let swaps = bucket.bubble_pass(end);
        stats.swaps += swaps;
        stats.comparisons += end as u64;
        stats.passes += 1;
        if variant == SortVariant::EarlyExit && swaps == 0 {
            break;
        }
    }
    stats
}

fn sort_run<B: SortableBucket>(run: Vec<B>, variant: SortVariant) -> SortStats {
    run.into_iter()
        .map(|mut b| bubble_sort_bucket(&mut b, variant))
        .sum()
}

/// Sorts every bucket on the calling thread, shortest length first.
pub fn sort_all_sequential<S: BucketStore>(store: &mut S, variant: SortVariant) -> SortStats {
    sort_run(store.buckets_mut(), variant)
}

/// Number of workers that receive at least one bucket.
pub fn active_workers(threads: NonZeroUsize, nonempty_buckets: usize) -> usize {
    threads.get().min(nonempty_buckets)
}

/// Bucket indices per worker for the static policies; `None` for
/// [`SchedulePolicy::Dynamic`], whose assignment is decided at run time.
///
/// Static block gives the first `buckets % workers` workers one extra bucket.
pub fn static_assignment(buckets: usize, workers: usize, schedule: SchedulePolicy) -> Option<Vec<Vec<usize>>> {
    if workers == 0 {
        return Some(Vec::new());
    }
    match schedule {
        SchedulePolicy::StaticBlock => {
            let (base, extra) = (buckets / workers, buckets % workers);
            let mut start = 0;
            Some(
                (0..workers)
                    .map(|w| {
                        let len = base + usize::from(w < extra);
                        let run = (start..start + len).collect();
                        start += len;
                        run
                    })
                    .collect(),
            )
        }
        SchedulePolicy::StaticCyclic => Some(
            (0..workers)
                .map(|w| (w..buckets).step_by(workers).collect())
                .collect(),
        ),
        SchedulePolicy::Dynamic => None,
    }
}

/// Sorts every bucket using `min(config.threads, non-empty buckets)` scoped
/// worker threads. The final store state and the summed stats equal those of
/// [`sort_all_sequential`] for the same variant.
///
/// `config.layout` is not consulted; the store's own layout is used.
pub fn sort_all_parallel<S: BucketStore>(store: &mut S, config: &SortConfig) -> SortStats {
    let variant = config.variant;
    let buckets = store.buckets_mut();
    let workers = active_workers(config.threads, buckets.len());
    if workers <= 1 {
        return sort_run(buckets, variant);
    }

    match static_assignment(buckets.len(), workers, config.schedule) {
        Some(assignment) => {
            let mut slots: Vec<Option<S::Bucket<'_>>> = buckets.into_iter().map(Some).collect();
            let runs: Vec<Vec<S::Bucket<'_>>> = assignment
                .into_iter()
                .map(|idx| idx.into_iter().map(|i| slots[i].take().expect("bucket assigned twice")).collect())
                .collect();
            std::thread::scope(|scope| {
                let handles: Vec<_> = runs.into_iter().map(|run| scope.spawn(move || sort_run(run, variant))).collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("sort worker panicked"))
                    .sum()
            })
        }
        None => {
            let queue = Mutex::new(buckets.into_iter());
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..workers)
                    .map(|_| {
                        let queue = &queue;
                        scope.spawn(move || {
                            let mut local = SortStats::default();
                            loop {
                                let next = queue.lock().expect("bucket queue poisoned").next();
                                match next {
                                    Some(mut b) => local += bubble_sort_bucket(&mut b, variant),
                                    None => break local,
                                }
                            }
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("sort worker panicked"))
                    .sum()
            })
        }
    }
}
