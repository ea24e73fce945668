//! Seeded pseudo-random corpora for verification and benchmarking.

use rand::distributions::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Word, WordSequence};

pub const ALPHANUMERIC: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

const SEPARATORS: &[u8] = b"     \n,.;:!?'\"-()";

/// `count` words with lengths uniform in `1..=max_len`, drawn from
/// `alphabet`. The same seed always yields the same words.
pub fn random_words_from(seed: u64, count: usize, max_len: usize, alphabet: &[u8]) -> WordSequence {
    assert!(max_len >= 1, "max_len must be at least 1");
    assert!(!alphabet.is_empty(), "alphabet must not be empty");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lens = Uniform::new_inclusive(1, max_len);
    let letters = Uniform::new(0, alphabet.len());
    (0..count)
        .map(|_| {
            let len = lens.sample(&mut rng);
            let bytes: Vec<u8> = (0..len).map(|_| alphabet[letters.sample(&mut rng)]).collect();
            Word::new(bytes).expect("alphabet must be ASCII alphanumeric")
        })
        .collect()
}

pub fn random_words(seed: u64, count: usize, max_len: usize) -> WordSequence {
    random_words_from(seed, count, max_len, ALPHANUMERIC)
}

/// Text of at least `target_bytes` bytes: random words separated by runs of
/// spaces, newlines and punctuation.
pub fn random_text(seed: u64, target_bytes: usize, max_len: usize) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(target_bytes + max_len + 4);
    let mut next_seed = rng.gen::<u64>();
    while out.len() < target_bytes {
        // words come in batches so the generator state stays cheap to advance
        for w in random_words(next_seed, 256, max_len) {
            out.extend_from_slice(w.as_bytes());
            let gap = rng.gen_range(1..=2);
            out.extend((0..gap).map(|_| SEPARATORS[rng.gen_range(0..SEPARATORS.len())]));
            if out.len() >= target_bytes {
                break;
            }
        }
        next_seed = rng.gen();
    }
    out
}
