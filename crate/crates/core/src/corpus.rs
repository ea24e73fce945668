//! Loading text and splitting it into words.
//!
//! A word is a maximal run of ASCII letters and digits. Every other byte,
//! including anything at or above 0x80, separates words and is dropped. Case
//! is preserved.

use std::fmt;
use std::ops::Deref;
use std::path::Path;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::sort::{sort_all_sequential, SortVariant};
use crate::store::{build_buckets, BucketStore};

/// File contents as raw 8-bit bytes. No encoding validation is done.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawText(Vec<u8>);

impl RawText {
    pub fn new(bytes: Vec<u8>) -> Self {
        RawText(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

impl Deref for RawText {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl AsRef<[u8]> for RawText {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for RawText {
    fn from(bytes: Vec<u8>) -> Self {
        RawText(bytes)
    }
}

impl From<&str> for RawText {
    fn from(s: &str) -> Self {
        RawText(s.as_bytes().to_vec())
    }
}

/// Returns true for the bytes that may appear inside a word.
#[inline]
pub fn is_word_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric()
}

/// A non-empty run of ASCII alphanumeric bytes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Box<[u8]>);

impl Word {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() || !bytes.iter().copied().all(is_word_byte) {
            return Err(Error::InvalidWord(String::from_utf8_lossy(&bytes).into_owned()));
        }
        Ok(Word(bytes.into_boxed_slice()))
    }

    /// Caller guarantees the bytes form a valid word.
    pub(crate) fn from_valid(bytes: &[u8]) -> Self {
        debug_assert!(!bytes.is_empty() && bytes.iter().copied().all(is_word_byte));
        Word(bytes.into())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }
}

impl AsRef<[u8]> for Word {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_string())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // word bytes are ASCII
        f.write_str(std::str::from_utf8(&self.0).unwrap_or_default())
    }
}

impl TryFrom<&str> for Word {
    type Error = Error;

    fn try_from(s: &str) -> Result<Self> {
        Word::new(s.as_bytes())
    }
}

/// Words in order of first-to-last appearance, duplicates kept.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordSequence(Vec<Word>);

impl WordSequence {
    pub fn new(words: Vec<Word>) -> Self {
        WordSequence(words)
    }

    /// Builds a sequence from string literals, panicking on invalid words.
    /// Intended for tests and examples.
    pub fn from_strs(words: &[&str]) -> Self {
        words
            .iter()
            .map(|w| Word::try_from(*w).expect("invalid word literal"))
            .collect()
    }

    pub fn into_inner(self) -> Vec<Word> {
        self.0
    }

    /// One word per line, each line terminated by `\n`.
    pub fn to_lines(&self) -> Vec<u8> {
        let total: usize = self.0.iter().map(|w| w.len() + 1).sum();
        let mut out = Vec::with_capacity(total);
        for w in &self.0 {
            out.extend_from_slice(w.as_bytes());
            out.push(b'\n');
        }
        out
    }

    /// Longest word length, 0 when empty.
    pub fn max_len(&self) -> usize {
        self.0.iter().map(Word::len).max().unwrap_or(0)
    }
}

impl Deref for WordSequence {
    type Target = [Word];

    fn deref(&self) -> &[Word] {
        &self.0
    }
}

impl FromIterator<Word> for WordSequence {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        WordSequence(iter.into_iter().collect())
    }
}

impl IntoIterator for WordSequence {
    type Item = Word;
    type IntoIter = std::vec::IntoIter<Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a WordSequence {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Reads the whole file, byte for byte.
pub fn load_text(path: impl AsRef<Path>) -> Result<RawText> {
    let path = path.as_ref();
    std::fs::read(path).map(RawText).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Splits text into its maximal runs of ASCII alphanumerics.
pub fn tokenize(text: impl AsRef<[u8]>) -> WordSequence {
    text.as_ref()
        .split(|&b| !is_word_byte(b))
        .filter(|run| !run.is_empty())
        .map(Word::from_valid)
        .collect()
}

/// Wall-clock durations of the pre-processing pipeline plus corpus shape.
#[derive(Debug, Clone, PartialEq)]
pub struct PreprocessReport {
    /// Reading the file and stripping non-word bytes.
    pub load_strip: Duration,
    /// Distributing words into per-length buckets.
    pub build_buckets: Duration,
    /// Sequentially bubble sorting every bucket.
    pub sort_buckets: Duration,
    pub word_count: usize,
    pub max_len: usize,
    /// `(length, count)` for every non-empty bucket, ascending length.
    pub histogram: Vec<(usize, usize)>,
}

impl PreprocessReport {
    /// `(phase, duration)` pairs in pipeline order.
    pub fn phases(&self) -> [(&'static str, Duration); 3] {
        [
            ("load_strip", self.load_strip),
            ("build_buckets", self.build_buckets),
            ("sort_buckets", self.sort_buckets),
        ]
    }
}

/// Runs load, strip, bucket and sort over one file and times each phase.
///
/// The sort phase uses the ragged layout and the naive variant on one thread.
pub fn preprocess_stats(path: impl AsRef<Path>) -> Result<PreprocessReport> {
    let start = Instant::now();
    let words = tokenize(load_text(path)?);
    let load_strip = start.elapsed();

    let start = Instant::now();
    let mut buckets = build_buckets(&words);
    let build = start.elapsed();

    let start = Instant::now();
    sort_all_sequential(&mut buckets, SortVariant::Naive);
    let sort = start.elapsed();

    Ok(PreprocessReport {
        load_strip,
        build_buckets: build,
        sort_buckets: sort,
        word_count: words.len(),
        max_len: buckets.max_len(),
        histogram: buckets.histogram(),
    })
}
