//! Scoring simplifier and record output against annotator references.

mod bleu;
mod sari;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arf::ActionRecord;

pub use bleu::{corpus_bleu, corpus_bleu_with, Smoothing};
pub use sari::{sari, sentence_sari};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("annotator {annotator} has no reference sentences")]
    EmptyReferences { annotator: usize },
    #[error("length mismatch: {what} has {left} items, expected {right}")]
    LengthMismatch { what: &'static str, left: usize, right: usize },
    #[error("hypothesis {0} has no references")]
    NoReference(usize),
}

/// Lowercases, splits trailing punctuation off words and splits on
/// whitespace.
pub fn tokenize(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    for word in s.to_lowercase().split_whitespace() {
        let core = word.trim_end_matches(|c: char| ".,!?;:".contains(c));
        if !core.is_empty() {
            out.push(core.to_string());
        }
        out.extend(word[core.len()..].chars().map(String::from));
    }
    out
}

/// Character edit distance with unit costs.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for i in 1..=a.len() {
        cur[0] = i;
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignedPair {
    pub hypothesis: String,
    /// One reference per annotator.
    pub references: Vec<String>,
    pub levenshtein_costs: Vec<usize>,
}

/// Pairs each hypothesis with the closest reference of every annotator.
/// Ties go to the earlier reference; references may be reused.
pub fn align(hypotheses: &[String], annotators: &[Vec<String>]) -> Result<Vec<AlignedPair>, EvalError> {
    if let Some(annotator) = annotators.iter().position(Vec::is_empty) {
        return Err(EvalError::EmptyReferences { annotator });
    }
    Ok(hypotheses
        .iter()
        .map(|h| {
            let (references, levenshtein_costs) = annotators
                .iter()
                .map(|refs| {
                    let (i, cost) = refs
                        .iter()
                        .map(|r| levenshtein(h, r))
                        .enumerate()
                        .min_by_key(|&(i, c)| (c, i))
                        .unwrap();
                    (refs[i].clone(), cost)
                })
                .unzip();
            AlignedPair {
                hypothesis: h.clone(),
                references,
                levenshtein_costs,
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Precision, recall and F1 (as percentages) for the positive class.
/// Undefined ratios are reported as 0.
pub fn boolean_prf(system: &[bool], gold: &[bool]) -> Result<Prf, EvalError> {
    if system.len() != gold.len() {
        return Err(EvalError::LengthMismatch {
            what: "system labels",
            left: system.len(),
            right: gold.len(),
        });
    }
    let tp = system.iter().zip(gold).filter(|(s, g)| **s && **g).count() as f64;
    let predicted = system.iter().filter(|s| **s).count() as f64;
    let actual = gold.iter().filter(|g| **g).count() as f64;
    let ratio = |n: f64, d: f64| if d == 0.0 { 0.0 } else { n / d };
    let p = ratio(tp, predicted);
    let r = ratio(tp, actual);
    Ok(Prf {
        precision: 100.0 * p,
        recall: 100.0 * r,
        f1: 100.0 * ratio(2.0 * p * r, p + r),
    })
}

/// Text fields scored with unigram BLEU.
pub const TEXT_FIELDS: [&str; 9] = [
    "owner",
    "target",
    "prop",
    "action",
    "origin_action",
    "manner",
    "modifier_location",
    "modifier_direction",
    "emotion",
];

fn text_field<'a>(r: &'a ActionRecord, field: &str) -> &'a str {
    match field {
        "owner" => &r.owner,
        "target" => &r.target,
        "prop" => &r.prop,
        "action" => &r.action,
        "origin_action" => &r.origin_action,
        "manner" => &r.manner,
        "modifier_location" => &r.modifier_location,
        "modifier_direction" => &r.modifier_direction,
        "emotion" => r.emotion.as_deref().unwrap_or(""),
        _ => "",
    }
}

/// Unigram BLEU per text field over aligned system/gold records. Pairs where
/// both sides are empty carry no signal and are skipped; a field with no
/// remaining pairs is left out.
pub fn per_field_bleu1(system: &[ActionRecord], gold: &[ActionRecord]) -> Result<BTreeMap<String, f64>, EvalError> {
    if system.len() != gold.len() {
        return Err(EvalError::LengthMismatch {
            what: "system records",
            left: system.len(),
            right: gold.len(),
        });
    }
    let mut out = BTreeMap::new();
    for field in TEXT_FIELDS {
        let pairs: Vec<AlignedPair> = system
            .iter()
            .zip(gold)
            .map(|(s, g)| (text_field(s, field), text_field(g, field)))
            .filter(|(s, g)| !(s.is_empty() && g.is_empty()))
            .map(|(s, g)| AlignedPair {
                hypothesis: s.to_string(),
                references: vec![g.to_string()],
                levenshtein_costs: vec![levenshtein(s, g)],
            })
            .collect();
        if !pairs.is_empty() {
            out.insert(field.to_string(), corpus_bleu(&pairs, 1));
        }
    }
    Ok(out)
}

/// Precision/recall on the two boolean fields.
pub fn boolean_field_prf(system: &[ActionRecord], gold: &[ActionRecord]) -> Result<BTreeMap<String, Prf>, EvalError> {
    let col = |rs: &[ActionRecord], f: fn(&ActionRecord) -> bool| rs.iter().map(f).collect::<Vec<_>>();
    let mut out = BTreeMap::new();
    out.insert(
        "translation".to_string(),
        boolean_prf(&col(system, |r| r.translation), &col(gold, |r| r.translation))?,
    );
    out.insert(
        "rotation".to_string(),
        boolean_prf(&col(system, |r| r.rotation), &col(gold, |r| r.rotation))?,
    );
    Ok(out)
}

/// A Description block as scored: its source text and its sentences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalBlock {
    #[serde(default)]
    pub source: String,
    pub sentences: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MetricReport {
    pub bleu: f64,
    pub sari: f64,
    pub per_field_bleu1: BTreeMap<String, f64>,
    pub boolean_field_prf: BTreeMap<String, Prf>,
}

/// Corpus BLEU over aligned sentences and block-level SARI.
///
/// `annotators[k][a]` is annotator k's version of block a. SARI compares the
/// joined hypothesis sentences of each block with the joined references.
pub fn evaluate(hypotheses: &[EvalBlock], annotators: &[Vec<EvalBlock>]) -> Result<MetricReport, EvalError> {
    for refs in annotators {
        if refs.len() != hypotheses.len() {
            return Err(EvalError::LengthMismatch {
                what: "reference blocks",
                left: refs.len(),
                right: hypotheses.len(),
            });
        }
    }
    let mut pairs = Vec::new();
    let mut sources = Vec::new();
    let mut joined_hyps = Vec::new();
    let mut joined_refs = Vec::new();
    for (a, block) in hypotheses.iter().enumerate() {
        let refs: Vec<Vec<String>> = annotators.iter().map(|r| r[a].sentences.clone()).collect();
        pairs.extend(align(&block.sentences, &refs)?);
        let source = if block.source.is_empty() {
            annotators.iter().map(|r| r[a].source.as_str()).find(|s| !s.is_empty()).unwrap_or("")
        } else {
            &block.source
        };
        sources.push(source.to_string());
        joined_hyps.push(block.sentences.join(" "));
        joined_refs.push(annotators.iter().map(|r| r[a].sentences.join(" ")).collect());
    }
    Ok(MetricReport {
        bleu: if pairs.is_empty() { 0.0 } else { corpus_bleu(&pairs, 4) },
        sari: if sources.is_empty() {
            0.0
        } else {
            sari(&sources, &joined_hyps, &joined_refs)?
        },
        ..Default::default()
    })
}
