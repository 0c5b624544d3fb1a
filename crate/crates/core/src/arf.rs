//! Action records: who does what to whom, where, how, and when, for one
//! simplified sentence.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deptree::{DepLabel, DepTree, Pos, TokenId};
use crate::lexmap::{map_action, similarity, EmbeddingTable, Lexicon, MappingResult, Method, Thresholds};
use crate::simplifier::SimplifiedSentence;

/// Structured diagnostic attached to a storyboard or printed on stderr.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Warning {
    pub warning: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sentence_index: Option<usize>,
}

impl Warning {
    pub fn new(code: &str) -> Self {
        Warning {
            warning: code.to_string(),
            lemma: None,
            block_index: None,
            sentence_index: None,
        }
    }

    pub fn with_lemma(mut self, lemma: &str) -> Self {
        self.lemma = Some(lemma.to_string());
        self
    }
}

pub const UNMAPPABLE_ACTION: &str = "unmappable_action";
pub const MISSING_OWNER: &str = "missing_owner";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionRecord {
    pub owner: String,
    pub target: String,
    pub prop: String,
    /// Canonical animation, or the bare verb lemma when nothing matched.
    pub action: String,
    pub origin_action: String,
    pub manner: String,
    pub modifier_location: String,
    pub modifier_direction: String,
    /// Seconds from the start of the scene.
    pub start_time: f64,
    pub duration: f64,
    pub speed: f64,
    pub translation: bool,
    pub rotation: bool,
    pub emotion: Option<String>,
    pub partial_start_time: i32,
}

/// Token span `[first, last]`, both inclusive, over the sentence's surface
/// tokens counted from zero.
pub type Span = [usize; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrlFrame {
    pub verb_index: usize,
    #[serde(default)]
    pub roles: BTreeMap<String, Span>,
}

/// One line of a frames file: the tokens the spans refer to, and the frames.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameLine {
    pub tokens: Vec<String>,
    #[serde(default)]
    pub frames: Vec<SrlFrame>,
}

/// Frames looked up by the (case-insensitive) token sequence they annotate.
#[derive(Debug, Clone, Default)]
pub struct FrameIndex {
    by_tokens: HashMap<Vec<String>, Vec<SrlFrame>>,
}

impl FrameIndex {
    pub fn parse_jsonl(content: &str) -> Result<FrameIndex, ArfError> {
        let mut by_tokens = HashMap::new();
        for (i, line) in content.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let parsed: FrameLine = serde_json::from_str(line).map_err(|e| ArfError::Frames {
                line: i + 1,
                message: e.to_string(),
            })?;
            for f in &parsed.frames {
                check_frame(f, parsed.tokens.len()).map_err(|message| ArfError::Frames { line: i + 1, message })?;
            }
            by_tokens.insert(lower(&parsed.tokens), parsed.frames);
        }
        Ok(FrameIndex { by_tokens })
    }

    pub fn get(&self, tokens: &[String]) -> Option<&[SrlFrame]> {
        self.by_tokens.get(&lower(tokens)).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.by_tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_tokens.is_empty()
    }
}

fn lower(tokens: &[String]) -> Vec<String> {
    tokens.iter().map(|t| t.to_lowercase()).collect()
}

fn check_frame(frame: &SrlFrame, n: usize) -> Result<(), String> {
    if frame.verb_index >= n {
        return Err(format!("verb_index {} outside {n} tokens", frame.verb_index));
    }
    for (role, [a, b]) in &frame.roles {
        if a > b || *b >= n {
            return Err(format!("{role} span [{a}, {b}] outside {n} tokens"));
        }
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArfError {
    #[error("sentence has no verb: {0}")]
    NoVerb(String),
    #[error("frames line {line}: {message}")]
    Frames { line: usize, message: String },
    #[error("frame does not fit sentence `{sentence}`: {message}")]
    FrameMismatch { sentence: String, message: String },
}

/// Which record field the patient (ARG1) and recipient (ARG2) fill.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoleAssignment {
    /// The thing handled is the prop, the one it is directed at the target.
    #[default]
    Corrected,
    /// Patient as target, recipient as prop.
    PaperCompat,
}

/// Editable word lists behind the heuristic fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct WordLists {
    pub fast: Vec<String>,
    pub slow: Vec<String>,
    pub speed_fast: Vec<String>,
    pub speed_slow: Vec<String>,
    pub translation: Vec<String>,
    pub rotation: Vec<String>,
    pub emotion: Vec<String>,
    pub locative_preps: Vec<String>,
    pub directional_preps: Vec<String>,
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

impl Default for WordLists {
    fn default() -> Self {
        WordLists {
            fast: strings(&["run", "fast", "quickly", "rapidly", "rush", "dash", "sprint", "hurry", "race"]),
            slow: strings(&["slowly", "slow", "gradually", "leisurely", "linger"]),
            speed_fast: strings(&["angrily", "furiously", "hastily", "frantically", "quickly"]),
            speed_slow: strings(&["carefully", "gently", "cautiously", "gingerly", "slowly"]),
            translation: strings(&[
                "go", "walk", "run", "come", "enter", "exit", "follow", "crawl", "climb", "drive", "jump",
            ]),
            rotation: strings(&["turn", "sit", "stand", "kneel", "lie", "lean"]),
            emotion: strings(&["angry", "happy", "sad", "scared", "surprised", "disgusted"]),
            locative_preps: strings(&["in", "at", "on", "inside", "near"]),
            directional_preps: strings(&["from", "toward", "towards", "into", "through"]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct ArfConfig {
    pub word_lists: WordLists,
    pub thresholds: Thresholds,
    pub roles: RoleAssignment,
}

fn listed(words: &[String], list: &[String]) -> bool {
    words.iter().any(|w| list.iter().any(|l| l.eq_ignore_ascii_case(w)))
}

/// 1 s for a fast word, else 4 s for a slow word, else 2 s.
pub fn duration_of(words: &[String], lists: &WordLists) -> f64 {
    if listed(words, &lists.fast) {
        1.0
    } else if listed(words, &lists.slow) {
        4.0
    } else {
        2.0
    }
}

/// Playback rate: 2 for an agitated word, 0.5 for a careful one, else 1.
pub fn speed_of(words: &[String], lists: &WordLists) -> f64 {
    if listed(words, &lists.speed_fast) {
        2.0
    } else if listed(words, &lists.speed_slow) {
        0.5
    } else {
        1.0
    }
}

/// (translation, rotation) for a canonical action.
pub fn motion_flags(action: &str, lists: &WordLists) -> (bool, bool) {
    let a = [action.to_string()];
    (listed(&a, &lists.translation), listed(&a, &lists.rotation))
}

/// The emotion word closest to any sentence word, if close enough. Ties go
/// to the emotion listed first.
pub fn emotion_of(words: &[String], emotions: &[String], table: &EmbeddingTable, threshold: f64) -> Option<String> {
    let mut best: Option<(&String, f64)> = None;
    for e in emotions {
        for w in words {
            let s = if w.eq_ignore_ascii_case(e) { 1.0 } else { similarity(w, e, table) };
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((e, s));
            }
        }
    }
    best.filter(|&(_, s)| s >= threshold).map(|(e, _)| e.clone())
}

/// Assigns start times to the records of one Description block, starting at
/// `clock`, and returns the clock after the block.
///
/// Records are stably sorted by temporal id. All records sharing an id start
/// together; the next id starts when the longest of them ends.
pub fn sequence_clock(records: &mut [ActionRecord], clock: f64) -> f64 {
    records.sort_by_key(|r| r.partial_start_time);
    let mut t = clock;
    let mut i = 0;
    while i < records.len() {
        let id = records[i].partial_start_time;
        let mut longest: f64 = 0.0;
        let mut j = i;
        while j < records.len() && records[j].partial_start_time == id {
            records[j].start_time = t;
            longest = longest.max(records[j].duration);
            j += 1;
        }
        t += longest;
        i = j;
    }
    t
}

/// A filled record and how its action was chosen.
#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub record: ActionRecord,
    pub mapping: MappingResult,
    pub warnings: Vec<Warning>,
}

/// The predicate: the root when verbal, otherwise the first verb.
fn main_verb(tree: &DepTree) -> Option<TokenId> {
    let root = tree.root();
    if tree.token(root).is_verbal() {
        return Some(root);
    }
    let ids = tree.reachable();
    ids.iter()
        .copied()
        .find(|&i| tree.token(i).pos == Pos::Verb)
        .or_else(|| ids.iter().copied().find(|&i| tree.token(i).is_verbal()))
}

fn phrase(tree: &DepTree, id: TokenId) -> String {
    let texts: Vec<&str> = tree
        .subtree(id)
        .into_iter()
        .filter(|&i| tree.token(i).pos != Pos::Punct)
        .map(|i| tree.token(i).text.as_str())
        .collect();
    texts.join(" ")
}

struct Slots {
    owner: String,
    patient: String,
    recipient: String,
    manner: String,
    location: String,
    direction: String,
}

fn dependency_slots(tree: &DepTree, verb: TokenId, lists: &WordLists) -> Slots {
    let child = |deps: &[DepLabel]| tree.child_by_dep(verb, deps).map(|c| phrase(tree, c)).unwrap_or_default();
    let preps: Vec<TokenId> = tree.children(verb).filter(|&c| tree.token(c).dep == DepLabel::Prep).collect();
    let prep_in = |list: &[String]| {
        preps
            .iter()
            .find(|&&p| listed(&[tree.token(p).lemma.clone()], list))
            .map(|&p| phrase(tree, p))
            .unwrap_or_default()
    };
    let recipient = tree
        .child_by_dep(verb, &[DepLabel::Dative])
        .or_else(|| {
            preps.iter().copied().find(|&p| {
                let l = [tree.token(p).lemma.clone()];
                !listed(&l, &lists.locative_preps) && !listed(&l, &lists.directional_preps)
            })
        })
        .map(|c| phrase(tree, c))
        .unwrap_or_default();
    Slots {
        owner: child(&[DepLabel::Nsubj, DepLabel::Nsubjpass, DepLabel::Other("expl".into())]),
        patient: child(&[DepLabel::Dobj]),
        recipient,
        manner: child(&[DepLabel::Advmod]),
        location: prep_in(&lists.locative_preps),
        direction: prep_in(&lists.directional_preps),
    }
}

fn frame_slots(frame: &SrlFrame, tokens: &[String]) -> Slots {
    let role = |name: &str| {
        frame
            .roles
            .get(name)
            .map(|&[a, b]| tokens[a..=b].join(" "))
            .unwrap_or_default()
    };
    Slots {
        owner: role("ARG0"),
        patient: role("ARG1"),
        recipient: role("ARG2"),
        manner: role("ARGM-MNR"),
        location: role("ARGM-LOC"),
        direction: role("ARGM-DIR"),
    }
}

/// Surface tokens in sentence order, original casing.
pub fn surface_tokens(tree: &DepTree) -> Vec<String> {
    tree.subtree(tree.root()).into_iter().map(|i| tree.token(i).text.clone()).collect()
}

/// Fills one record. `frames` are matched against the sentence's surface
/// tokens; without a frame for the main verb the dependency rules apply.
pub fn extract(
    sentence: &SimplifiedSentence,
    frames: &[SrlFrame],
    lexicon: &Lexicon,
    table: &EmbeddingTable,
    config: &ArfConfig,
) -> Result<Extraction, ArfError> {
    let tree = &sentence.tree;
    let verb = main_verb(tree).ok_or_else(|| ArfError::NoVerb(sentence.text.clone()))?;
    let order = tree.subtree(tree.root());
    let tokens = surface_tokens(tree);
    let verb_pos = order.iter().position(|&i| i == verb);

    for f in frames {
        check_frame(f, tokens.len()).map_err(|message| ArfError::FrameMismatch {
            sentence: sentence.text.clone(),
            message,
        })?;
    }
    let lists = &config.word_lists;
    let slots = match frames.iter().find(|f| Some(f.verb_index) == verb_pos) {
        Some(f) => frame_slots(f, &tokens),
        None => dependency_slots(tree, verb, lists),
    };

    let v = tree.token(verb);
    let prep = tree
        .child_by_dep(verb, &[DepLabel::Other("prt".into()), DepLabel::Prep])
        .map(|p| tree.token(p).lemma.clone());
    let object = tree.child_by_dep(verb, &[DepLabel::Dobj]).map(|o| tree.token(o).lemma.clone());
    let mapping = map_action(&v.lemma, prep.as_deref(), object.as_deref(), lexicon, table, &config.thresholds);
    let action = mapping.matched.clone().unwrap_or_else(|| v.lemma.to_lowercase());

    let words: Vec<String> = order
        .iter()
        .map(|&i| tree.token(i))
        .filter(|t| t.pos != Pos::Punct)
        .flat_map(|t| [t.text.to_lowercase(), t.lemma.to_lowercase()])
        .collect();
    let (translation, rotation) = motion_flags(&action, lists);

    let (target, prop) = match config.roles {
        RoleAssignment::Corrected => (slots.recipient, slots.patient),
        RoleAssignment::PaperCompat => (slots.patient, slots.recipient),
    };
    let mut warnings = Vec::new();
    if mapping.method == Method::Unmapped {
        warnings.push(Warning::new(UNMAPPABLE_ACTION).with_lemma(&v.lemma.to_lowercase()));
    }
    if slots.owner.is_empty() {
        warnings.push(Warning::new(MISSING_OWNER));
    }
    let record = ActionRecord {
        owner: slots.owner,
        target,
        prop,
        action,
        origin_action: v.text.clone(),
        manner: slots.manner,
        modifier_location: slots.location,
        modifier_direction: slots.direction,
        start_time: 0.0,
        duration: duration_of(&words, lists),
        speed: speed_of(&words, lists),
        translation,
        rotation,
        emotion: emotion_of(&words, &lists.emotion, table, config.thresholds.emotion),
        partial_start_time: sentence.temporal_id,
    };
    Ok(Extraction {
        record,
        mapping,
        warnings,
    })
}
