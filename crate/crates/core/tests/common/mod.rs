#![allow(dead_code)]

use std::cmp::Ordering;

use bucketbubble::{SortableBucket, Word};

/// Composite order used by the oracle: shorter words first, then raw bytes.
/// Written without reference to the library's comparator.
pub fn key_cmp(a: &[u8], b: &[u8]) -> Ordering {
    match a.len().cmp(&b.len()) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return if x < y { Ordering::Less } else { Ordering::Greater };
        }
    }
    Ordering::Equal
}

/// Top-down stable merge sort.
pub fn merge_sort(words: &[Word]) -> Vec<Word> {
    if words.len() <= 1 {
        return words.to_vec();
    }
    let mid = words.len() / 2;
    let (left, right) = (merge_sort(&words[..mid]), merge_sort(&words[mid..]));
    let mut out = Vec::with_capacity(words.len());
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        // take from the left on ties to stay stable
        if key_cmp(right[j].as_bytes(), left[i].as_bytes()) == Ordering::Less {
            out.push(right[j].clone());
            j += 1;
        } else {
            out.push(left[i].clone());
            i += 1;
        }
    }
    out.extend_from_slice(&left[i..]);
    out.extend_from_slice(&right[j..]);
    out
}

/// Wraps a bucket and carries a hidden sequence tag per element through every
/// swap, so the relative order of equal words can be inspected afterwards.
pub struct Tagged<B> {
    pub inner: B,
    pub tags: Vec<usize>,
}

impl<B: SortableBucket> Tagged<B> {
    pub fn new(inner: B) -> Self {
        let tags = (0..inner.len()).collect();
        Tagged { inner, tags }
    }

    /// Tags of equal neighbours must be increasing.
    pub fn is_stable(&self) -> bool {
        (1..self.inner.len()).all(|i| {
            self.inner.element(i - 1) != self.inner.element(i) || self.tags[i - 1] < self.tags[i]
        })
    }
}

impl<B: SortableBucket> SortableBucket for Tagged<B> {
    fn len(&self) -> usize {
        self.inner.len()
    }

    fn width(&self) -> usize {
        self.inner.width()
    }

    fn element(&self, i: usize) -> &[u8] {
        self.inner.element(i)
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.inner.swap(i, j);
        self.tags.swap(i, j);
    }
}
