use std::collections::HashMap;

use super::{tokenize, AlignedPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Smoothing {
    /// Any n-gram order without a match makes the score 0.
    #[default]
    None,
    /// Adds one to the match and total counts of orders 2 and up.
    AddOne,
}

fn ngrams(tokens: &[String], n: usize) -> HashMap<&[String], usize> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for w in tokens.windows(n) {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

/// Corpus BLEU (percent) with clipped n-gram precision up to `max_n`,
/// uniform weights and a brevity penalty against the closest reference
/// length (shorter on ties).
pub fn corpus_bleu(pairs: &[AlignedPair], max_n: usize) -> f64 {
    corpus_bleu_with(pairs, max_n, Smoothing::None)
}

pub fn corpus_bleu_with(pairs: &[AlignedPair], max_n: usize, smoothing: Smoothing) -> f64 {
    assert!((1..=4).contains(&max_n), "max_n must be in 1..=4");
    let mut matched = vec![0usize; max_n];
    let mut total = vec![0usize; max_n];
    let mut hyp_len = 0usize;
    let mut ref_len = 0usize;

    for pair in pairs {
        let hyp = tokenize(&pair.hypothesis);
        let refs: Vec<Vec<String>> = pair.references.iter().map(|r| tokenize(r)).collect();
        for n in 1..=max_n {
            let counts = ngrams(&hyp, n);
            let ref_counts: Vec<_> = refs.iter().map(|r| ngrams(r, n)).collect();
            for (gram, c) in &counts {
                let cap = ref_counts.iter().map(|rc| rc.get(gram).copied().unwrap_or(0)).max().unwrap_or(0);
                matched[n - 1] += (*c).min(cap);
            }
            total[n - 1] += hyp.len().saturating_sub(n - 1).max(1);
        }
        hyp_len += hyp.len();
        ref_len += refs
            .iter()
            .map(Vec::len)
            .min_by_key(|&l| (l.abs_diff(hyp.len()), l))
            .unwrap_or(0);
    }

    if matched[0] == 0 || hyp_len == 0 {
        return 0.0;
    }
    let mut log_sum = 0.0;
    for n in 0..max_n {
        let (m, t) = match smoothing {
            Smoothing::AddOne if n > 0 => (matched[n] as f64 + 1.0, total[n] as f64 + 1.0),
            _ => (matched[n] as f64, total[n] as f64),
        };
        if m == 0.0 {
            return 0.0;
        }
        log_sum += (m / t).ln() / max_n as f64;
    }
    let bp = if hyp_len > ref_len {
        1.0
    } else {
        (1.0 - ref_len as f64 / hyp_len as f64).exp()
    };
    100.0 * bp * log_sum.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(h: &str, refs: &[&str]) -> AlignedPair {
        AlignedPair {
            hypothesis: h.into(),
            references: refs.iter().map(|s| s.to_string()).collect(),
            levenshtein_costs: vec![0; refs.len()],
        }
    }

    #[test]
    fn exact_match_scores_full() {
        let p = [pair("the doctor explains", &["the doctor explains", "the doctor is talking."])];
        assert!((corpus_bleu(&p, 2) - 100.0).abs() < 1e-9);
    }

    #[test]
    fn no_overlap_is_zero() {
        assert_eq!(corpus_bleu(&[pair("a b", &["c d"])], 2), 0.0);
        assert_eq!(corpus_bleu(&[pair("", &["c d"])], 1), 0.0);
    }

    #[test]
    fn short_hypothesis_is_penalized() {
        // unigram precision 1, c = 2, r = 4
        let s = corpus_bleu(&[pair("a b", &["a b c d"])], 1);
        assert!((s - 100.0 * (1.0f64 - 2.0).exp()).abs() < 1e-9);
    }

    #[test]
    fn smoothing_rescues_missing_bigrams() {
        let p = [pair("a b", &["b a"])];
        assert_eq!(corpus_bleu(&p, 2), 0.0);
        let s = corpus_bleu_with(&p, 2, Smoothing::AddOne);
        assert!((s - 100.0 * (0.5f64).sqrt()).abs() < 1e-9);
    }
}
