//! Screenplay segmentation: paragraphs are classified into functional
//! components by a small state machine driven by keyword and indentation rules.

mod mentions;
mod stats;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use mentions::{
    character_registry, cue_name, description_cues, prepend_character_cues, resolve_mentions, resolve_mentions_with,
    PossessiveStyle,
};
pub use stats::{corpus_stats, sentence_char_spans, split_sentences, CorpusStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentKind {
    Heading,
    Description,
    CharacterCue,
    Dialog,
    SlugLine,
    Transition,
    Unclassified,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptBlock {
    pub kind: ComponentKind,
    /// The paragraph's lines, right-trimmed and joined by newlines.
    pub text: String,
    /// Leading whitespace of the first line; a tab counts as four spaces.
    pub indent: usize,
    pub start_line: usize,
    pub end_line: usize,
    pub scene_index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FsmState {
    Start,
    Heading,
    Description,
    CharacterCue,
    Dialog,
    SlugLine,
    Transition,
    Unclassified,
    /// After "THE END"; everything that follows is unclassified.
    End,
}

impl FsmState {
    pub fn kind(self) -> ComponentKind {
        match self {
            FsmState::Heading => ComponentKind::Heading,
            FsmState::Description => ComponentKind::Description,
            FsmState::CharacterCue => ComponentKind::CharacterCue,
            FsmState::Dialog => ComponentKind::Dialog,
            FsmState::SlugLine => ComponentKind::SlugLine,
            FsmState::Transition => ComponentKind::Transition,
            FsmState::Start | FsmState::Unclassified | FsmState::End => ComponentKind::Unclassified,
        }
    }
}

/// Keyword lists for the lexical rules. Extend through the config file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Keywords {
    pub heading: Vec<String>,
    pub transition: Vec<String>,
    pub character_markers: Vec<String>,
    pub end_marker: String,
}

impl Default for Keywords {
    fn default() -> Self {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        Keywords {
            heading: v(&["INT", "EXT", "INT./EXT", "I/E"]),
            transition: v(&["DISSOLVE", "CUT TO", "FADE IN", "FADE OUT", "SMASH CUT", "MATCH CUT"]),
            character_markers: v(&["CONT.", "CONT'D", "(O.S)", "(O.S.)", "(V.O)", "(V.O.)"]),
            end_marker: "THE END".into(),
        }
    }
}

/// Document-level quantities the indentation rules consult.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FsmContext {
    /// Most frequent paragraph indentation in the document.
    pub most_frequent_indent: usize,
    /// Indentation of the previous paragraph.
    pub last_indent: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContractViolation {
    #[error("rule id {0} is outside 1..=7")]
    UnknownRule(u8),
}

/// One paragraph as the rules see it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paragraph<'a> {
    pub text: &'a str,
    pub indent: usize,
}

fn has_letters_all_upper(s: &str) -> bool {
    s.chars().any(char::is_alphabetic) && !s.chars().any(char::is_lowercase)
}

fn contains_heading_word(text: &str, words: &[String]) -> bool {
    text.split_whitespace().any(|tok| {
        let tok = tok.trim_end_matches(['.', ':', '-', ',']);
        words.iter().any(|w| w.trim_end_matches('.').eq_ignore_ascii_case(tok))
    })
}

fn contains_phrase(text: &str, phrases: &[String]) -> bool {
    let upper = text.to_uppercase();
    phrases.iter().any(|p| {
        let p = p.to_uppercase();
        upper.match_indices(&p).any(|(i, _)| {
            let before_ok = upper[..i].chars().next_back().is_none_or(|c| !c.is_alphanumeric());
            let after_ok = upper[i + p.len()..].chars().next().is_none_or(|c| !c.is_alphanumeric());
            before_ok && after_ok
        })
    })
}

/// Evaluates one transition rule on a paragraph.
///
/// 1 heading word, 2 character cue, 3 opens a parenthetical, 4 closes one,
/// 5 indentation close to the previous paragraph, 6 transition word, 7 end.
pub fn rule_fires(
    rule: u8,
    paragraph: &Paragraph<'_>,
    context: &FsmContext,
    keywords: &Keywords,
) -> Result<bool, ContractViolation> {
    let text = paragraph.text.trim();
    let upper = has_letters_all_upper(text);
    Ok(match rule {
        1 => upper && contains_heading_word(text, &keywords.heading),
        2 => {
            upper
                && (keywords.character_markers.iter().any(|m| text.contains(m.as_str()))
                    || paragraph.indent > context.most_frequent_indent)
        }
        3 => text.starts_with('('),
        4 => text.ends_with(')'),
        5 => context.last_indent.abs_diff(paragraph.indent) < 3,
        6 => upper && contains_phrase(text, &keywords.transition),
        7 => text == keywords.end_marker,
        other => return Err(ContractViolation::UnknownRule(other)),
    })
}

fn fires(rule: u8, p: &Paragraph<'_>, ctx: &FsmContext, kw: &Keywords) -> bool {
    rule_fires(rule, p, ctx, kw).expect("rule ids used internally are valid")
}

/// The transition function. Total: every state and paragraph yield a state.
///
/// Keyword rules (end, transition, heading) are tried before the structural
/// ones so that right-aligned transitions are not taken for character cues.
pub fn transition(state: FsmState, p: &Paragraph<'_>, ctx: &FsmContext, kw: &Keywords) -> FsmState {
    if state == FsmState::End {
        return FsmState::End;
    }
    if fires(7, p, ctx, kw) {
        return FsmState::Transition;
    }
    if fires(6, p, ctx, kw) {
        return FsmState::Transition;
    }
    if fires(1, p, ctx, kw) {
        return FsmState::Heading;
    }
    let upper = has_letters_all_upper(p.text);
    match state {
        FsmState::CharacterCue | FsmState::SlugLine if fires(3, p, ctx, kw) => return FsmState::SlugLine,
        FsmState::SlugLine if !upper && fires(4, p, ctx, kw) && !p.text.trim().starts_with('(') => {
            return FsmState::SlugLine
        }
        FsmState::CharacterCue | FsmState::SlugLine => return FsmState::Dialog,
        FsmState::Dialog if fires(3, p, ctx, kw) => return FsmState::SlugLine,
        FsmState::Dialog if !upper && fires(5, p, ctx, kw) => return FsmState::Dialog,
        _ => {}
    }
    let mf = ctx.most_frequent_indent;
    if fires(2, p, ctx, kw) {
        FsmState::CharacterCue
    } else if p.indent <= mf || (!upper && p.indent <= mf + 2) {
        // Mixed case tolerates a little extra indentation.
        FsmState::Description
    } else {
        FsmState::Unclassified
    }
}

fn indent_of(line: &str) -> usize {
    line.chars()
        .take_while(|c| c.is_whitespace())
        .map(|c| if c == '\t' { 4 } else { 1 })
        .sum()
}

struct RawParagraph {
    lines: Vec<String>,
    indent: usize,
    start_line: usize,
    end_line: usize,
}

/// Splits text into paragraphs at blank lines, at indentation jumps of three
/// or more, after a closed parenthetical, and where an all-caps line is
/// followed by a mixed-case one.
fn paragraphs(raw: &str) -> Vec<RawParagraph> {
    let mut out: Vec<RawParagraph> = Vec::new();
    let mut open = false;
    for (i, line) in raw.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() {
            open = false;
            continue;
        }
        let indent = indent_of(line);
        let split = match out.last() {
            Some(prev) if open => {
                let last = prev.lines.last().unwrap();
                let closes_paren = prev.lines[0].trim_start().starts_with('(') && last.ends_with(')');
                indent_of(last).abs_diff(indent) >= 3
                    || closes_paren
                    || (has_letters_all_upper(last) && !has_letters_all_upper(line))
            }
            _ => true,
        };
        if split {
            out.push(RawParagraph {
                lines: vec![line.to_string()],
                indent,
                start_line: i + 1,
                end_line: i + 1,
            });
        } else {
            let p = out.last_mut().unwrap();
            p.lines.push(line.to_string());
            p.end_line = i + 1;
        }
        open = true;
    }
    out
}

fn most_frequent_indent(paras: &[RawParagraph]) -> usize {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for p in paras {
        *counts.entry(p.indent).or_default() += 1;
    }
    // Ties go to the smaller indentation.
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(indent, _)| indent)
        .unwrap_or(0)
}

pub fn segment(raw: &str) -> Vec<ScriptBlock> {
    segment_with(raw, &Keywords::default())
}

pub fn segment_with(raw: &str, keywords: &Keywords) -> Vec<ScriptBlock> {
    let paras = paragraphs(raw);
    let mut ctx = FsmContext {
        most_frequent_indent: most_frequent_indent(&paras),
        last_indent: 0,
    };
    let mut state = FsmState::Start;
    let mut headings = 0usize;
    let mut blocks = Vec::with_capacity(paras.len());
    for p in paras {
        let text = p.lines.join("\n");
        let para = Paragraph {
            text: text.trim(),
            indent: p.indent,
        };
        let next = transition(state, &para, &ctx, keywords);
        let ended = next == FsmState::Transition && fires(7, &para, &ctx, keywords);
        if next == FsmState::Heading {
            headings += 1;
        }
        blocks.push(ScriptBlock {
            kind: next.kind(),
            text,
            indent: p.indent,
            start_line: p.start_line,
            end_line: p.end_line,
            scene_index: headings.saturating_sub(1),
        });
        ctx.last_indent = p.indent;
        state = if ended { FsmState::End } else { next };
    }
    blocks
}

/// Share of blocks the rules could not classify; high values suggest an
/// unconventionally formatted script.
pub fn unclassified_ratio(blocks: &[ScriptBlock]) -> f64 {
    if blocks.is_empty() {
        return 0.0;
    }
    let n = blocks.iter().filter(|b| b.kind == ComponentKind::Unclassified).count();
    n as f64 / blocks.len() as f64
}
