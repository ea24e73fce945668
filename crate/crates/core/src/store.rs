//! Per-length word buckets in two memory layouts.
//!
//! Bucket `L` holds every word of exactly `L` bytes, in corpus order until it
//! is sorted. Both layouts hand out one exclusive [`SortableBucket`] view per
//! non-empty bucket, which is what lets distinct buckets be sorted on distinct
//! threads.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Word, WordSequence};
use crate::error::Error;
use crate::sort::{
    bubble_sort_bucket, compare_words, sort_all_parallel, sort_all_sequential, SortConfig,
    SortStats, SortVariant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayoutKind {
    /// One heap allocation per word, grouped in per-length lists.
    Ragged,
    /// One contiguous block per length, fixed-width rows.
    Flat,
}

impl LayoutKind {
    pub const ALL: [LayoutKind; 2] = [LayoutKind::Ragged, LayoutKind::Flat];

    pub fn as_str(self) -> &'static str {
        match self {
            LayoutKind::Ragged => "ragged",
            LayoutKind::Flat => "flat",
        }
    }
}

impl fmt::Display for LayoutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for LayoutKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "ragged" => Ok(LayoutKind::Ragged),
            "flat" => Ok(LayoutKind::Flat),
            _ => Err(Error::UnknownName {
                kind: "layout",
                value: s.to_owned(),
            }),
        }
    }
}

/// Exclusive access to one bucket: equal-width elements that can be compared
/// and swapped by index.
pub trait SortableBucket {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Byte length shared by every element.
    fn width(&self) -> usize;

    fn element(&self, i: usize) -> &[u8];

    fn compare(&self, i: usize, j: usize) -> Ordering {
        compare_words(self.element(i), self.element(j))
    }

    fn swap(&mut self, i: usize, j: usize);

    /// One pass over positions `0..=end`: every adjacent pair is compared once
    /// and swapped when the left element is strictly greater. Returns the
    /// number of swaps.
    fn bubble_pass(&mut self, end: usize) -> u64 {
        default_pass(self, end)
    }
}

/// A bucket of the ragged layout.
#[derive(Debug)]
pub struct RaggedBucket<'a> {
    width: usize,
    words: &'a mut [Word],
}

impl<'a> RaggedBucket<'a> {
    pub fn new(width: usize, words: &'a mut [Word]) -> Self {
        debug_assert!(words.iter().all(|w| w.len() == width));
        RaggedBucket { width, words }
    }
}

impl SortableBucket for RaggedBucket<'_> {
    fn len(&self) -> usize {
        self.words.len()
    }

    fn width(&self) -> usize {
        self.width
    }

    fn element(&self, i: usize) -> &[u8] {
        self.words[i].as_bytes()
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.words.swap(i, j);
    }
}

/// A bucket of the flat layout: `len` rows of `width` bytes, back to back.
#[derive(Debug)]
pub struct FlatRows<'a> {
    width: usize,
    bytes: &'a mut [u8],
}

impl<'a> FlatRows<'a> {
    pub fn new(width: usize, bytes: &'a mut [u8]) -> Self {
        assert!(width > 0, "row width must be positive");
        assert_eq!(bytes.len() % width, 0, "block is not a whole number of rows");
        FlatRows { width, bytes }
    }
}

impl SortableBucket for FlatRows<'_> {
    fn len(&self) -> usize {
        self.bytes.len() / self.width
    }

    fn width(&self) -> usize {
        self.width
    }

    #[inline]
    fn element(&self, i: usize) -> &[u8] {
        &self.bytes[i * self.width..(i + 1) * self.width]
    }

    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let w = self.width;
        let (head, tail) = self.bytes.split_at_mut(hi * w);
        head[lo * w..(lo + 1) * w].swap_with_slice(&mut tail[..w]);
    }

    fn bubble_pass(&mut self, end: usize) -> u64 {
        macro_rules! by_width {
            ($($w:literal)*) => {
                match self.width {
                    $($w => fixed_width_pass::<$w>(&mut self.bytes[..(end + 1) * $w]),)*
                    _ => default_pass(self, end),
                }
            };
        }
        by_width!(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16)
    }
}

/// Rows of up to 16 bytes compare as big-endian integers. The row being
/// bubbled forward is carried in a local; each swap writes the smaller row
/// back one slot.
fn fixed_width_pass<const W: usize>(bytes: &mut [u8]) -> u64 {
    let (rows, rest) = bytes.as_chunks_mut::<W>();
    debug_assert!(rest.is_empty());
    let key = |row: &[u8; W]| row.iter().fold(0u128, |acc, &b| (acc << 8) | u128::from(b));
    let Some(&first) = rows.first() else {
        return 0;
    };
    let (mut carried, mut carried_key) = (first, key(&first));
    let mut swaps = 0;
    for j in 1..rows.len() {
        let next = rows[j];
        let next_key = key(&next);
        if carried_key > next_key {
            rows[j - 1] = next;
            swaps += 1;
        } else {
            rows[j - 1] = carried;
            carried = next;
            carried_key = next_key;
        }
    }
    let last = rows.len() - 1;
    rows[last] = carried;
    swaps
}

/// Compares and swaps each adjacent pair in `0..=end` through the trait.
pub(crate) fn default_pass<B: SortableBucket + ?Sized>(bucket: &mut B, end: usize) -> u64 {
    let mut swaps = 0;
    for j in 0..end {
        if bucket.compare(j, j + 1) == Ordering::Greater {
            bucket.swap(j, j + 1);
            swaps += 1;
        }
    }
    swaps
}

/// Common interface of both layouts.
pub trait BucketStore {
    type Bucket<'a>: SortableBucket + Send
    where
        Self: 'a;

    fn layout(&self) -> LayoutKind;

    /// Longest word length present, 0 when empty.
    fn max_len(&self) -> usize;

    /// Number of words in bucket `len`; 0 for lengths with no words.
    fn count(&self, len: usize) -> usize;

    /// Words of bucket `len` in their current order.
    fn bucket_words(&self, len: usize) -> Vec<Word>;

    /// One exclusive view per non-empty bucket, ascending length.
    fn buckets_mut(&mut self) -> Vec<Self::Bucket<'_>>;

    fn total_words(&self) -> usize {
        (1..=self.max_len()).map(|len| self.count(len)).sum()
    }

    /// `(length, count)` for every non-empty bucket.
    fn histogram(&self) -> Vec<(usize, usize)> {
        (1..=self.max_len())
            .map(|len| (len, self.count(len)))
            .filter(|&(_, c)| c > 0)
            .collect()
    }

    fn nonempty_buckets(&self) -> usize {
        (1..=self.max_len()).filter(|&len| self.count(len) > 0).count()
    }

    /// Concatenates the buckets in ascending length order. Once every bucket is
    /// sorted the result is ordered by length, then by raw bytes.
    fn emit_sorted(&self) -> WordSequence {
        (1..=self.max_len())
            .flat_map(|len| self.bucket_words(len))
            .collect()
    }
}

/// Ragged layout: `buckets[L - 1]` lists the words of length `L`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BucketSet {
    buckets: Vec<Vec<Word>>,
}

impl BucketSet {
    pub fn bucket(&self, len: usize) -> &[Word] {
        len.checked_sub(1)
            .and_then(|i| self.buckets.get(i))
            .map_or(&[], Vec::as_slice)
    }
}

/// Distributes words into the ragged layout, corpus order kept per bucket.
pub fn build_buckets(words: &[Word]) -> BucketSet {
    let max_len = words.iter().map(Word::len).max().unwrap_or(0);
    let mut buckets = vec![Vec::new(); max_len];
    for w in words {
        buckets[w.len() - 1].push(w.clone());
    }
    BucketSet { buckets }
}

impl BucketStore for BucketSet {
    type Bucket<'a> = RaggedBucket<'a>;

    fn layout(&self) -> LayoutKind {
        LayoutKind::Ragged
    }

    fn max_len(&self) -> usize {
        self.buckets.len()
    }

    fn count(&self, len: usize) -> usize {
        self.bucket(len).len()
    }

    fn bucket_words(&self, len: usize) -> Vec<Word> {
        self.bucket(len).to_vec()
    }

    fn buckets_mut(&mut self) -> Vec<RaggedBucket<'_>> {
        self.buckets
            .iter_mut()
            .enumerate()
            .filter(|(_, b)| !b.is_empty())
            .map(|(i, b)| RaggedBucket::new(i + 1, b))
            .collect()
    }

    fn emit_sorted(&self) -> WordSequence {
        self.buckets.iter().flatten().cloned().collect()
    }
}

/// Rows of one length in the flat layout.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct FlatBlock {
    count: usize,
    bytes: Vec<u8>,
}

/// Flat layout: `blocks[L - 1]` holds `count_L` rows of exactly `L` bytes with
/// no padding and no terminators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlatBucketMatrix {
    blocks: Vec<FlatBlock>,
}

impl FlatBucketMatrix {
    /// Raw bytes of block `len`: `count(len) * len` bytes.
    pub fn block(&self, len: usize) -> &[u8] {
        len.checked_sub(1)
            .and_then(|i| self.blocks.get(i))
            .map_or(&[], |b| b.bytes.as_slice())
    }

    pub fn row(&self, len: usize, i: usize) -> &[u8] {
        &self.block(len)[i * len..(i + 1) * len]
    }
}

/// Copies words into the flat layout, corpus order kept per block.
pub fn build_flat(words: &[Word]) -> FlatBucketMatrix {
    let max_len = words.iter().map(Word::len).max().unwrap_or(0);
    let mut counts = vec![0usize; max_len];
    for w in words {
        counts[w.len() - 1] += 1;
    }
    let mut blocks: Vec<FlatBlock> = counts
        .iter()
        .enumerate()
        .map(|(i, &count)| FlatBlock {
            count,
            bytes: Vec::with_capacity(count * (i + 1)),
        })
        .collect();
    for w in words {
        blocks[w.len() - 1].bytes.extend_from_slice(w.as_bytes());
    }
    FlatBucketMatrix { blocks }
}

impl BucketStore for FlatBucketMatrix {
    type Bucket<'a> = FlatRows<'a>;

    fn layout(&self) -> LayoutKind {
        LayoutKind::Flat
    }

    fn max_len(&self) -> usize {
        self.blocks.len()
    }

    fn count(&self, len: usize) -> usize {
        len.checked_sub(1)
            .and_then(|i| self.blocks.get(i))
            .map_or(0, |b| b.count)
    }

    fn bucket_words(&self, len: usize) -> Vec<Word> {
        if len == 0 {
            return Vec::new();
        }
        self.block(len).chunks_exact(len).map(Word::from_valid).collect()
    }

    fn buckets_mut(&mut self) -> Vec<FlatRows<'_>> {
        self.blocks
            .iter_mut()
            .enumerate()
            .filter(|(_, b)| b.count > 0)
            .map(|(i, b)| FlatRows::new(i + 1, &mut b.bytes))
            .collect()
    }
}

/// Either layout, chosen at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Store {
    Ragged(BucketSet),
    Flat(FlatBucketMatrix),
}

impl Store {
    pub fn build(layout: LayoutKind, words: &[Word]) -> Self {
        match layout {
            LayoutKind::Ragged => Store::Ragged(build_buckets(words)),
            LayoutKind::Flat => Store::Flat(build_flat(words)),
        }
    }

    pub fn layout(&self) -> LayoutKind {
        match self {
            Store::Ragged(_) => LayoutKind::Ragged,
            Store::Flat(_) => LayoutKind::Flat,
        }
    }

    pub fn sort_sequential(&mut self, variant: SortVariant) -> SortStats {
        match self {
            Store::Ragged(s) => sort_all_sequential(s, variant),
            Store::Flat(s) => sort_all_sequential(s, variant),
        }
    }

    pub fn sort_parallel(&mut self, config: &SortConfig) -> SortStats {
        match self {
            Store::Ragged(s) => sort_all_parallel(s, config),
            Store::Flat(s) => sort_all_parallel(s, config),
        }
    }

    /// Sorts bucket `len` alone. Returns zero stats for an empty bucket.
    pub fn sort_bucket(&mut self, len: usize, variant: SortVariant) -> SortStats {
        fn pick<S: BucketStore>(s: &mut S, len: usize, variant: SortVariant) -> SortStats {
            s.buckets_mut()
                .into_iter()
                .find(|b| b.width() == len)
                .map_or_else(SortStats::default, |mut b| bubble_sort_bucket(&mut b, variant))
        }
        match self {
            Store::Ragged(s) => pick(s, len, variant),
            Store::Flat(s) => pick(s, len, variant),
        }
    }

    pub fn emit_sorted(&self) -> WordSequence {
        match self {
            Store::Ragged(s) => s.emit_sorted(),
            Store::Flat(s) => s.emit_sorted(),
        }
    }

    pub fn max_len(&self) -> usize {
        match self {
            Store::Ragged(s) => s.max_len(),
            Store::Flat(s) => s.max_len(),
        }
    }

    pub fn histogram(&self) -> Vec<(usize, usize)> {
        match self {
            Store::Ragged(s) => s.histogram(),
            Store::Flat(s) => s.histogram(),
        }
    }
}
