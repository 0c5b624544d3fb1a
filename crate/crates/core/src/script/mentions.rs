//! Character-cue pairing and a rule-based pronoun substitution.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{ComponentKind, ScriptBlock};

/// How a resolved possessive pronoun is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PossessiveStyle {
    /// "his hat" becomes "KEVIN 's hat".
    #[default]
    Clitic,
    /// "his hat" becomes "KEVIN hat".
    Bare,
}

/// Name part of a cue line: "JIM (CONT'D)" gives "JIM".
pub fn cue_name(cue: &str) -> String {
    let mut name = cue.trim();
    if let Some(i) = name.find('(') {
        name = &name[..i];
    }
    name.trim()
        .trim_end_matches(|c: char| c == ':' || c == '.' || c.is_whitespace())
        .to_string()
}

/// All names appearing as character cues, in first-seen order.
pub fn character_registry(blocks: &[ScriptBlock]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    blocks
        .iter()
        .filter(|b| b.kind == ComponentKind::CharacterCue)
        .map(|b| cue_name(&b.text))
        .filter(|n| !n.is_empty() && seen.insert(n.to_lowercase()))
        .collect()
}

/// Pairs each Description with the closest earlier cue in the same scene.
pub fn prepend_character_cues(blocks: &[ScriptBlock]) -> Vec<(String, String)> {
    description_cues(blocks)
        .into_iter()
        .map(|(i, cue)| (blocks[i].text.clone(), cue))
        .collect()
}

/// Like [`prepend_character_cues`], keyed by block position.
pub fn description_cues(blocks: &[ScriptBlock]) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cue: Option<(usize, String)> = None;
    for (i, b) in blocks.iter().enumerate() {
        match b.kind {
            ComponentKind::CharacterCue => cue = Some((b.scene_index, cue_name(&b.text))),
            ComponentKind::Heading => cue = None,
            ComponentKind::Description => {
                let name = match &cue {
                    Some((scene, name)) if *scene == b.scene_index => name.clone(),
                    _ => String::new(),
                };
                out.push((i, name));
            }
            _ => {}
        }
    }
    out
}

const SUBJECT_LIKE: [&str; 3] = ["he", "she", "they"];
const ALWAYS_POSSESSIVE: [&str; 2] = ["his", "their"];

/// Words after which "her" reads as an object rather than a determiner.
const FUNCTION_WORDS: [&str; 40] = [
    "a", "an", "the", "to", "and", "or", "but", "in", "on", "at", "of", "for", "with", "from", "into",
    "onto", "by", "up", "down", "out", "off", "over", "back", "away", "as", "if", "that", "this",
    "then", "again", "too", "when", "while", "before", "after", "is", "was", "so", "around", "through",
];

#[derive(Debug, Clone)]
struct Tok {
    text: String,
    /// Byte span of the word itself, punctuation excluded.
    start: usize,
    end: usize,
}

fn words(text: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        let wordy = c.is_alphanumeric() || c == '\'' || c == '-';
        match (wordy, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push(Tok {
                    text: text[s..i].to_string(),
                    start: s,
                    end: i,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Tok {
            text: text[s..].to_string(),
            start: s,
            end: text.len(),
        });
    }
    for t in &mut out {
        // "Ellie's" is a name followed by a clitic.
        if let Some(stem) = t.text.strip_suffix("'s").or_else(|| t.text.strip_suffix("'S")) {
            if !stem.is_empty() {
                t.end = t.start + stem.len();
                t.text = stem.to_string();
            }
        }
        let trimmed = t.text.trim_matches(|c| c == '\'' || c == '-');
        if trimmed.len() != t.text.len() {
            let lead = t.text.len() - t.text.trim_start_matches(['\'', '-']).len();
            t.start += lead;
            t.end = t.start + trimmed.len();
            t.text = trimmed.to_string();
        }
    }
    out.retain(|t| !t.text.is_empty());
    out
}

fn sentence_spans(text: &str) -> Vec<(usize, usize)> {
    super::stats::sentence_spans(text)
}

/// Replaces third-person pronouns with a character name when exactly one
/// candidate is available: the distinct registry names mentioned earlier in
/// the same sentence, or the cue when there are none.
pub fn resolve_mentions(text: &str, cue: &str, registry: &[String]) -> String {
    resolve_mentions_with(text, cue, registry, PossessiveStyle::Clitic)
}

pub fn resolve_mentions_with(text: &str, cue: &str, registry: &[String], style: PossessiveStyle) -> String {
    let cue = cue_name(cue);
    let known: Vec<String> = registry
        .iter()
        .map(|n| cue_name(n))
        .chain((!cue.is_empty()).then(|| cue.clone()))
        .filter(|n| !n.is_empty())
        .collect();

    let mut out = String::with_capacity(text.len() + 16);
    let mut copied = 0;
    for (s_start, s_end) in sentence_spans(text) {
        let sentence = &text[s_start..s_end];
        let toks = words(sentence);
        // Distinct names seen so far in this sentence, as first written.
        let mut names: Vec<String> = Vec::new();
        let mut i = 0;
        while i < toks.len() {
            if let Some(len) = match_name(&toks[i..], &known) {
                let surface = sentence[toks[i].start..toks[i + len - 1].end].to_string();
                if !names.iter().any(|n| n.eq_ignore_ascii_case(&surface)) {
                    names.push(surface);
                }
                i += len;
                continue;
            }
            let lower = toks[i].text.to_lowercase();
            let possessive = ALWAYS_POSSESSIVE.contains(&lower.as_str())
                || (lower == "her"
                    && toks
                        .get(i + 1)
                        .is_some_and(|n| {
                            let gap = &sentence[toks[i].end..n.start];
                            gap.trim().is_empty() && !FUNCTION_WORDS.contains(&n.text.to_lowercase().as_str())
                        }));
            let pronoun = SUBJECT_LIKE.contains(&lower.as_str()) || lower == "her" || possessive;
            if pronoun {
                let candidate = match names.len() {
                    0 if !cue.is_empty() => Some(cue.clone()),
                    1 => Some(names[0].clone()),
                    _ => None,
                };
                if let Some(name) = candidate {
                    let at = s_start + toks[i].start;
                    out.push_str(&text[copied..at]);
                    out.push_str(&name);
                    if possessive && style == PossessiveStyle::Clitic {
                        out.push_str(" 's");
                    }
                    copied = s_start + toks[i].end;
                    if !names.iter().any(|n| n.eq_ignore_ascii_case(&name)) {
                        names.push(name);
                    }
                }
            }
            i += 1;
        }
    }
    out.push_str(&text[copied..]);
    out
}

/// Length in words of the longest known name starting at `toks[0]`.
fn match_name(toks: &[Tok], known: &[String]) -> Option<usize> {
    known
        .iter()
        .filter_map(|name| {
            let parts: Vec<&str> = name.split_whitespace().collect();
            let hit = parts.len() <= toks.len()
                && parts.iter().zip(toks).all(|(p, t)| p.eq_ignore_ascii_case(&t.text));
            hit.then_some(parts.len())
        })
        .max()
}
