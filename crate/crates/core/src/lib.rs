//! Length-bucketed bubble sort over the words of a text corpus.
//!
//! Words are split out of raw bytes ([`corpus`]), distributed into one bucket
//! per word length ([`store`]), and each bucket is bubble sorted on its own
//! ([`sort`]). Buckets share nothing, so the per-bucket sorts run on a pool of
//! workers without synchronisation beyond the final join. Concatenating the
//! sorted buckets in ascending length order yields every word ordered by
//! length first and raw bytes second.
//!
//! Two storage layouts are provided behind the [`BucketStore`] trait:
//!
//! * [`BucketSet`]: one independently allocated word per list slot.
//! * [`FlatBucketMatrix`]: one contiguous byte block per length, one fixed
//!   width row per word.
//!
//! [`harness`] times sorts over configurable matrices of layout, variant and
//! thread count and derives speedup and efficiency from the 1-thread baseline.

pub mod corpus;
pub mod error;
pub mod harness;
pub mod sort;
pub mod store;
pub mod synth;
pub mod verify;

pub use corpus::{load_text, preprocess_stats, tokenize, PreprocessReport, RawText, Word, WordSequence};
pub use error::{Error, Result};
pub use harness::{
    compute_efficiency, compute_speedup, emit_report, run_matrix, time_sort, BenchReport, Dataset,
    MatrixPlan, ReportFormat, ReportRow, TimingRow,
};
pub use sort::{
    bubble_sort_bucket, compare_words, sort_all_parallel, sort_all_sequential, SchedulePolicy,
    SortConfig, SortStats, SortVariant,
};
pub use store::{
    build_buckets, build_flat, BucketSet, BucketStore, FlatBucketMatrix, LayoutKind, SortableBucket,
    Store,
};
