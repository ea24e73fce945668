mod common;

use std::num::NonZeroUsize;

use bucketbubble::store::{FlatRows, RaggedBucket};
use bucketbubble::synth::random_words_from;
use bucketbubble::{
    build_buckets, build_flat, bubble_sort_bucket, sort_all_parallel, sort_all_sequential, tokenize, BucketStore,
    LayoutKind, SchedulePolicy, SortConfig, SortVariant, Store, Word, WordSequence,
};
use common::{merge_sort, Tagged};
use proptest::prelude::*;

fn word_strategy(max_len: usize, alphabet: &'static [u8]) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(alphabet), 1..=max_len).prop_map(|b| Word::new(b).unwrap())
}

fn corpus_strategy() -> impl Strategy<Value = WordSequence> {
    prop_oneof![
        prop::collection::vec(word_strategy(12, b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"), 0..300),
        // few distinct words: lots of duplicates
        prop::collection::vec(word_strategy(3, b"aB1"), 0..300),
    ]
    .prop_map(WordSequence::new)
}

fn equal_width_rows(n: usize, width: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(prop::sample::select(&b"abcXYZ019"[..]), n * width)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn both_layouts_match_oracle(words in corpus_strategy(), variant in prop::sample::select(&SortVariant::ALL[..])) {
        let expected = merge_sort(&words);
        let mut ragged = build_buckets(&words);
        let mut flat = build_flat(&words);
        let a = sort_all_sequential(&mut ragged, variant);
        let b = sort_all_sequential(&mut flat, variant);
        prop_assert_eq!(a, b);
        prop_assert_eq!(&ragged.emit_sorted()[..], &expected[..]);
        prop_assert_eq!(flat.emit_sorted(), ragged.emit_sorted());
    }

    #[test]
    fn flat_round_trips_ragged(words in corpus_strategy()) {
        let ragged = build_buckets(&words);
        let flat = build_flat(&words);
        prop_assert_eq!(ragged.max_len(), flat.max_len());
        prop_assert_eq!(ragged.total_words(), words.len());
        for len in 0..=ragged.max_len() + 1 {
            prop_assert_eq!(flat.block(len).len(), flat.count(len) * len);
            prop_assert_eq!(ragged.bucket_words(len), flat.bucket_words(len));
            prop_assert!(ragged.bucket(len).iter().all(|w| w.len() == len));
        }
    }

    #[test]
    fn parallel_matches_sequential(
        words in corpus_strategy(),
        variant in prop::sample::select(&SortVariant::ALL[..]),
        layout in prop::sample::select(&LayoutKind::ALL[..]),
        schedule in prop::sample::select(&SchedulePolicy::ALL[..]),
        threads in 1usize..=16,
    ) {
        let mut seq = Store::build(layout, &words);
        let seq_stats = seq.sort_sequential(variant);
        let mut par = Store::build(layout, &words);
        let config = SortConfig::new(layout, variant, threads, schedule).unwrap();
        let par_stats = par.sort_parallel(&config);
        prop_assert_eq!(seq_stats, par_stats);
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn naive_comparison_law(n in 0usize..=200, width in 1usize..=4, seed in any::<u64>()) {
        let rows = random_words_from(seed, n, 1, b"abcdefgh");
        // widen to `width` by repetition so every row shares one length
        let mut bytes: Vec<u8> = rows.iter().flat_map(|w| std::iter::repeat_n(w.as_bytes()[0], width)).collect();
        let stats = bubble_sort_bucket(&mut FlatRows::new(width, &mut bytes), SortVariant::Naive);
        prop_assert_eq!(stats.comparisons, (n * n.saturating_sub(1) / 2) as u64);
        prop_assert!(stats.swaps <= stats.comparisons);
    }

    #[test]
    fn early_exit_bounded(bytes in (0usize..=60, 1usize..=3).prop_flat_map(|(n, w)| (Just(w), equal_width_rows(n, w)))) {
        let (width, mut bytes) = bytes;
        let n = bytes.len() / width;
        let stats = bubble_sort_bucket(&mut FlatRows::new(width, &mut bytes), SortVariant::EarlyExit);
        prop_assert!(stats.comparisons <= (n * n.saturating_sub(1) / 2) as u64);
        prop_assert!(stats.swaps <= stats.comparisons);
        // already sorted now: one verification pass
        let again = bubble_sort_bucket(&mut FlatRows::new(width, &mut bytes), SortVariant::EarlyExit);
        if n >= 2 {
            prop_assert_eq!(again.comparisons, (n - 1) as u64);
            prop_assert_eq!(again.passes, 1);
        }
        prop_assert_eq!(again.swaps, 0);
        prop_assert!(bytes.chunks_exact(width).collect::<Vec<_>>().windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn stable_in_both_layouts(bytes in (0usize..=80).prop_flat_map(|n| equal_width_rows(n, 2)), variant in prop::sample::select(&SortVariant::ALL[..])) {
        let mut flat_bytes = bytes.clone();
        let mut flat = Tagged::new(FlatRows::new(2, &mut flat_bytes));
        bubble_sort_bucket(&mut flat, variant);
        prop_assert!(flat.is_stable());

        let mut words: Vec<Word> = bytes.chunks_exact(2).map(|c| Word::new(c).unwrap()).collect();
        let mut ragged = Tagged::new(RaggedBucket::new(2, &mut words));
        bubble_sort_bucket(&mut ragged, variant);
        prop_assert!(ragged.is_stable());
    }

    #[test]
    fn tokenizer_alphabet_closed(text in prop::collection::vec(any::<u8>(), 0..400)) {
        let words = tokenize(&text);
        prop_assert!(words.iter().all(|w| !w.as_bytes().is_empty() && w.as_bytes().iter().all(u8::is_ascii_alphanumeric)));
        prop_assert_eq!(&words, &tokenize(&text));
        let joined: Vec<u8> = words.iter().map(|w| w.as_bytes()).collect::<Vec<_>>().join(&b' ');
        prop_assert_eq!(tokenize(&joined), words);
    }
}

#[test]
fn stats_invariant_across_threads_and_schedules() {
    let words = random_words_from(42, 2_000, 9, b"abcdefghij");
    let mut reference = build_flat(&words);
    let expected = sort_all_sequential(&mut reference, SortVariant::EarlyExit);
    for schedule in SchedulePolicy::ALL {
        for threads in 1..=16 {
            let mut store = build_flat(&words);
            let config = SortConfig::new(LayoutKind::Flat, SortVariant::EarlyExit, threads, schedule).unwrap();
            assert_eq!(sort_all_parallel(&mut store, &config), expected);
            assert_eq!(store, reference);
        }
    }
}

#[test]
fn one_thread_parallel_is_sequential() {
    let words = random_words_from(3, 500, 7, b"xyzXYZ");
    let mut a = build_buckets(&words);
    let mut b = build_buckets(&words);
    let config = SortConfig::sequential(LayoutKind::Ragged).with_threads(NonZeroUsize::MIN);
    assert_eq!(sort_all_sequential(&mut a, SortVariant::Naive), sort_all_parallel(&mut b, &config));
    assert_eq!(a, b);
}

#[test]
fn many_small_buckets_match_oracle() {
    for seed in 0..1000u64 {
        let words = random_words_from(seed, (seed % 9) as usize, 4, b"abAB");
        let mut store = build_flat(&words);
        sort_all_sequential(&mut store, SortVariant::Naive);
        assert_eq!(&store.emit_sorted()[..], &merge_sort(&words)[..], "seed {seed}");
    }
}
