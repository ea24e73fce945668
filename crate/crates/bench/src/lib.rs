//! Fixtures shared by the criterion benches.

use bucketbubble::synth::{random_text, random_words};
use bucketbubble::WordSequence;

/// Words per bucket stays small enough that one iteration is milliseconds.
pub fn small_corpus() -> WordSequence {
    random_words(0xbe4c, 6_000, 12)
}

/// Raw text of roughly `bytes` bytes for tokenizer throughput.
pub fn text(bytes: usize) -> Vec<u8> {
    random_text(0x7e47, bytes, 12)
}
