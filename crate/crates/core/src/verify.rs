//! Checks the bucketed bubble sort against the standard library's stable
//! sort keyed by (length, bytes).

use std::fmt;

use crate::corpus::Word;
use crate::error::Error;
use crate::sort::{SchedulePolicy, SortConfig, SortVariant};
use crate::store::{LayoutKind, Store};

/// Words ordered by length, then raw bytes; ties keep input order.
pub fn baseline_sort(words: &[Word]) -> Vec<Word> {
    let mut out = words.to_vec();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.as_bytes().cmp(b.as_bytes())));
    out
}

/// First position where the bucketed output differs from the baseline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub config: SortConfig,
    pub index: usize,
    pub expected: Option<Word>,
    pub actual: Option<Word>,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &Option<Word>| w.as_ref().map_or_else(|| "<end>".to_owned(), Word::to_string);
        write!(
            f,
            "mismatch at index {} ({} layout, {} variant, {} threads, {} schedule): expected {}, got {}",
            self.index,
            self.config.layout,
            self.config.variant,
            self.config.threads,
            self.config.schedule,
            show(&self.expected),
            show(&self.actual),
        )
    }
}

/// Cross product of configurations to verify.
#[derive(Debug, Clone)]
pub struct VerifyPlan {
    pub layouts: Vec<LayoutKind>,
    pub variants: Vec<SortVariant>,
    pub threads: Vec<usize>,
    pub schedule: SchedulePolicy,
}

impl Default for VerifyPlan {
    fn default() -> Self {
        VerifyPlan {
            layouts: LayoutKind::ALL.to_vec(),
            variants: SortVariant::ALL.to_vec(),
            threads: vec![1, 4, 16],
            schedule: SchedulePolicy::StaticBlock,
        }
    }
}

impl VerifyPlan {
    pub fn configs(&self) -> Result<Vec<SortConfig>, Error> {
        let mut out = Vec::new();
        for &layout in &self.layouts {
            for &variant in &self.variants {
                for &threads in &self.threads {
                    out.push(SortConfig::new(layout, variant, threads, self.schedule)?);
                }
            }
        }
        Ok(out)
    }
}

fn first_divergence(expected: &[Word], actual: &[Word]) -> Option<(usize, Option<Word>, Option<Word>)> {
    let n = expected.len().max(actual.len());
    (0..n).find_map(|i| {
        let (e, a) = (expected.get(i), actual.get(i));
        (e != a).then(|| (i, e.cloned(), a.cloned()))
    })
}

/// Sorts `words` under every configuration and compares each output with
/// [`baseline_sort`]. Returns the number of configurations checked.
pub fn verify_words(words: &[Word], configs: &[SortConfig]) -> Result<usize, Divergence> {
    let expected = baseline_sort(words);
    for config in configs {
        let mut store = Store::build(config.layout, words);
        store.sort_parallel(config);
        let actual = store.emit_sorted();
        if let Some((index, expected, actual)) = first_divergence(&expected, &actual) {
            return Err(Divergence {
                config: *config,
                index,
                expected,
                actual,
            });
        }
    }
    Ok(configs.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::WordSequence;
    use crate::synth::random_words;

    #[test]
    fn baseline_orders_by_length_then_bytes() {
        let ws = WordSequence::from_strs(&["bb", "a", "Z", "ab"]);
        let sorted: Vec<String> = baseline_sort(&ws).iter().map(Word::to_string).collect();
        assert_eq!(sorted, ["Z", "a", "ab", "bb"]);
    }

    #[test]
    fn default_plan_has_twelve_configs() {
        let configs = VerifyPlan::default().configs().unwrap();
        assert_eq!(configs.len(), 12);
        let words = random_words(11, 400, 10);
        assert_eq!(verify_words(&words, &configs), Ok(12));
    }

    #[test]
    fn all_equal_words_verify() {
        let words: WordSequence = std::iter::repeat_n(Word::try_from("same").unwrap(), 1000).collect();
        let configs = VerifyPlan::default().configs().unwrap();
        assert_eq!(verify_words(&words, &configs), Ok(12));
    }

    #[test]
    fn divergence_reports_both_words() {
        let expected = WordSequence::from_strs(&["a", "b"]);
        let actual = WordSequence::from_strs(&["a", "c"]);
        let (i, e, a) = first_divergence(&expected, &actual).unwrap();
        assert_eq!(i, 1);
        let d = Divergence {
            config: SortConfig::sequential(LayoutKind::Flat),
            index: i,
            expected: e,
            actual: a,
        };
        let msg = d.to_string();
        assert!(msg.contains("index 1") && msg.contains("expected b, got c"), "{msg}");
        assert_eq!(first_divergence(&expected, &expected), None);
        assert_eq!(first_divergence(&expected, &expected[..1]).unwrap().0, 1);
    }
}
