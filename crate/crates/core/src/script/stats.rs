//! Sentence splitting and corpus counts over Description blocks.

use std::collections::HashSet;

use serde::Serialize;

use super::{ComponentKind, ScriptBlock};
use crate::deptree::lemma_of_past;

const ABBREVIATIONS: [&str; 14] = [
    "mr", "mrs", "ms", "dr", "st", "jr", "sr", "vs", "etc", "prof", "mt", "no", "int", "ext",
];

/// Byte spans of the sentences in `text`. Terminal punctuation stays with its
/// sentence; surrounding whitespace is excluded.
pub(crate) fn sentence_spans(text: &str) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if start.is_none() && !c.is_whitespace() {
            start = Some(pos);
        }
        if matches!(c, '.' | '!' | '?') {
            let mut j = i;
            while j + 1 < chars.len() && matches!(chars[j + 1].1, '.' | '!' | '?' | '"' | '\'' | ')') {
                j += 1;
            }
            let end = chars.get(j + 1).map_or(text.len(), |&(p, _)| p);
            let at_boundary = chars.get(j + 1).is_none_or(|&(_, n)| n.is_whitespace());
            if at_boundary && c == '.' && is_abbreviation(&text[start.unwrap_or(0)..pos]) {
                i = j + 1;
                continue;
            }
            if at_boundary {
                if let Some(s) = start.take() {
                    spans.push((s, end));
                }
            }
            i = j + 1;
            continue;
        }
        i += 1;
    }
    if let Some(s) = start {
        let end = text.trim_end().len();
        if end > s {
            spans.push((s, end));
        }
    }
    spans
}

fn is_abbreviation(before: &str) -> bool {
    let word: String = before
        .chars()
        .rev()
        .take_while(|c| c.is_alphabetic())
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    // Single initials ("J. Smith") and common titles.
    (word.chars().count() == 1 && word.chars().all(char::is_uppercase))
        || ABBREVIATIONS.contains(&word.to_lowercase().as_str())
}

/// Sentence spans as `[start, end)` character (not byte) offsets.
pub fn sentence_char_spans(text: &str) -> Vec<[usize; 2]> {
    let chars = |b: usize| text[..b].chars().count();
    sentence_spans(text).into_iter().map(|(s, e)| [chars(s), chars(e)]).collect()
}

pub fn split_sentences(text: &str) -> Vec<String> {
    sentence_spans(text)
        .into_iter()
        .map(|(s, e)| text[s..e].split_whitespace().collect::<Vec<_>>().join(" "))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
pub struct CorpusStats {
    pub blocks: usize,
    pub description_components: usize,
    pub sentences: usize,
    pub components_with_action: usize,
    pub action_sentences: usize,
    pub mean_sentence_length: f64,
    pub unclassified_ratio: f64,
}

fn candidate_lemmas(word: &str) -> Vec<String> {
    let w = word.to_lowercase();
    let mut out = vec![w.clone(), lemma_of_past(&w)];
    if let Some(stem) = w.strip_suffix("ies") {
        out.push(format!("{stem}y"));
    }
    if let Some(stem) = w.strip_suffix("es") {
        out.push(stem.to_string());
    }
    if let Some(stem) = w.strip_suffix('s') {
        out.push(stem.to_string());
    }
    out
}

fn has_action(sentence: &str, verbs: &HashSet<String>) -> bool {
    sentence
        .split(|c: char| !c.is_alphabetic() && c != '\'')
        .filter(|w| !w.is_empty())
        .any(|w| candidate_lemmas(w).iter().any(|l| verbs.contains(l)))
}

/// Counts over the Description blocks of a corpus. A sentence has an action
/// when any of its words is an inflection of a listed verb.
pub fn corpus_stats(blocks: &[ScriptBlock], animation_verbs: &HashSet<String>) -> CorpusStats {
    let mut stats = CorpusStats {
        blocks: blocks.len(),
        unclassified_ratio: super::unclassified_ratio(blocks),
        ..Default::default()
    };
    let mut words = 0usize;
    for b in blocks.iter().filter(|b| b.kind == ComponentKind::Description) {
        stats.description_components += 1;
        let mut any = false;
        for s in split_sentences(&b.text) {
            stats.sentences += 1;
            words += s.split_whitespace().count();
            if has_action(&s, animation_verbs) {
                stats.action_sentences += 1;
                any = true;
            }
        }
        stats.components_with_action += usize::from(any);
    }
    if stats.sentences > 0 {
        stats.mean_sentence_length = words as f64 / stats.sentences as f64;
    }
    stats
}
