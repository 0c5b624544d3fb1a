//! Rewrites a parsed sentence into short, single-clause sentences.
//!
//! Each analyzer knows one construction: `identify` says whether it occurs in a
//! tree, `transform` splits or rewrites the tree around it. The controller runs
//! a breadth-first worklist; a tree that no analyzer touches, or that comes back
//! around unchanged, is emitted.

mod acl;
mod advcl;
mod appositive;
mod ccomp;
mod coordination;
mod inverted_csubj;
mod passive;
mod preconj;
mod relative;
mod util;
mod xcomp;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deptree::{correct_verb_tense, normalize_for_hash, realize, DepLabel, DepTree};

pub use advcl::{temporal_shift, MarkerKind};

/// Flag set on a verb whose clausal complement was split off. Such a verb no
/// longer carries a predicate on its own.
pub const STRANDED: &str = "stranded";

/// Default cap on worklist pushes per input sentence.
pub const DEFAULT_BUDGET: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalyzerKind {
    Coordination,
    Preconj,
    Appositive,
    Relative,
    Advcl,
    InvertedCsubj,
    Ccomp,
    Passive,
    Xcomp,
    Acl,
}

impl AnalyzerKind {
    /// Default application order.
    pub const ALL: [AnalyzerKind; 10] = [
        AnalyzerKind::Coordination,
        AnalyzerKind::Preconj,
        AnalyzerKind::Appositive,
        AnalyzerKind::Relative,
        AnalyzerKind::Advcl,
        AnalyzerKind::InvertedCsubj,
        AnalyzerKind::Ccomp,
        AnalyzerKind::Passive,
        AnalyzerKind::Xcomp,
        AnalyzerKind::Acl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AnalyzerKind::Coordination => "coordination",
            AnalyzerKind::Preconj => "preconj",
            AnalyzerKind::Appositive => "appositive",
            AnalyzerKind::Relative => "relative",
            AnalyzerKind::Advcl => "advcl",
            AnalyzerKind::InvertedCsubj => "inverted_csubj",
            AnalyzerKind::Ccomp => "ccomp",
            AnalyzerKind::Passive => "passive",
            AnalyzerKind::Xcomp => "xcomp",
            AnalyzerKind::Acl => "acl",
        }
    }

    pub fn identify(self, tree: &DepTree) -> bool {
        match self {
            AnalyzerKind::Coordination => coordination::identify(tree),
            AnalyzerKind::Preconj => preconj::identify(tree).is_some(),
            AnalyzerKind::Appositive => appositive::identify(tree).is_some(),
            AnalyzerKind::Relative => relative::identify(tree).is_some(),
            AnalyzerKind::Advcl => advcl::identify(tree).is_some(),
            AnalyzerKind::InvertedCsubj => inverted_csubj::identify(tree).is_some(),
            AnalyzerKind::Ccomp => ccomp::identify(tree).is_some(),
            AnalyzerKind::Passive => passive::identify(tree).is_some(),
            AnalyzerKind::Xcomp => xcomp::identify(tree).is_some(),
            AnalyzerKind::Acl => acl::identify(tree).is_some(),
        }
    }

    /// Rewrites the first occurrence of the construction. Returns an empty
    /// vector when `identify` would be false.
    pub fn transform(self, tree: &DepTree) -> Vec<Rewrite> {
        match self {
            AnalyzerKind::Coordination => coordination::transform(tree),
            AnalyzerKind::Preconj => preconj::transform(tree),
            AnalyzerKind::Appositive => appositive::transform(tree),
            AnalyzerKind::Relative => relative::transform(tree),
            AnalyzerKind::Advcl => advcl::transform(tree),
            AnalyzerKind::InvertedCsubj => inverted_csubj::transform(tree),
            AnalyzerKind::Ccomp => ccomp::transform(tree),
            AnalyzerKind::Passive => passive::transform(tree),
            AnalyzerKind::Xcomp => xcomp::transform(tree),
            AnalyzerKind::Acl => acl::transform(tree),
        }
    }
}

impl fmt::Display for AnalyzerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown analyzer `{0}`")]
pub struct UnknownAnalyzer(pub String);

impl FromStr for AnalyzerKind {
    type Err = UnknownAnalyzer;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace(['-', ' '], "_");
        AnalyzerKind::ALL
            .into_iter()
            .find(|a| a.name() == key)
            .ok_or_else(|| UnknownAnalyzer(s.to_string()))
    }
}

/// One output of a transform. `temporal_delta` is added to the parent's id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    pub tree: DepTree,
    pub temporal_delta: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplifiedSentence {
    pub text: String,
    #[serde(skip)]
    pub tree: DepTree,
    /// Relative order of the described events; equal ids are simultaneous.
    pub temporal_id: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplifyOptions {
    pub analyzers: Vec<AnalyzerKind>,
    pub budget: usize,
    /// Drop fragments without a predicate, short sentences and duplicates.
    pub filter: bool,
}

impl Default for SimplifyOptions {
    fn default() -> Self {
        SimplifyOptions {
            analyzers: AnalyzerKind::ALL.to_vec(),
            budget: DEFAULT_BUDGET,
            filter: true,
        }
    }
}

impl SimplifyOptions {
    pub fn only(analyzer: AnalyzerKind) -> Self {
        SimplifyOptions {
            analyzers: vec![analyzer],
            ..Default::default()
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplifyError {
    #[error("simplification did not settle within {budget} steps")]
    BudgetExceeded { budget: usize },
}

/// Tense-corrects the root predicate of `tree` in place.
pub fn correct_root_tense(tree: &mut DepTree) {
    let root = tree.root();
    let t = tree.token(root);
    if t.is_verbal() || t.tag.starts_with("VB") {
        correct_verb_tense(tree, root);
    }
}

/// Splits one parsed sentence into simple sentences, ordered by temporal id
/// (ties keep emission order).
pub fn simplify(tree: &DepTree, options: &SimplifyOptions) -> Result<Vec<SimplifiedSentence>, SimplifyError> {
    let mut queue: VecDeque<(DepTree, i32)> = VecDeque::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut emitted: Vec<SimplifiedSentence> = Vec::new();
    let mut pushes = 1usize;
    queue.push_back((tree.compact(), 0));

    while let Some((current, temporal_id)) = queue.pop_front() {
        let key = normalize_for_hash(&realize(&current, current.root()));
        if !seen.insert(key) {
            emit(&mut emitted, current, temporal_id);
            continue;
        }
        let fired = options.analyzers.iter().find(|a| a.identify(&current));
        let outputs = fired.map(|a| a.transform(&current)).unwrap_or_default();
        if outputs.is_empty() {
            emit(&mut emitted, current, temporal_id);
            continue;
        }
        for Rewrite { mut tree, temporal_delta } in outputs {
            correct_root_tense(&mut tree);
            pushes += 1;
            if pushes > options.budget {
                return Err(SimplifyError::BudgetExceeded { budget: options.budget });
            }
            queue.push_back((tree, temporal_id + temporal_delta));
        }
    }

    emitted.sort_by_key(|s| s.temporal_id);
    Ok(if options.filter { filter(emitted) } else { emitted })
}

fn emit(out: &mut Vec<SimplifiedSentence>, tree: DepTree, temporal_id: i32) {
    let text = realize(&tree, tree.root());
    if text.is_empty() {
        return;
    }
    out.push(SimplifiedSentence {
        text,
        tree,
        temporal_id,
    });
}

fn is_complement(dep: &DepLabel) -> bool {
    matches!(dep, DepLabel::Dobj | DepLabel::Attr | DepLabel::Pobj | DepLabel::Dative)
        || matches!(dep.as_str(), "acomp" | "oprd")
}

/// Whether a sentence carries content worth animating: at least three tokens
/// (terminal punctuation counts) and either a non-copular verb or some
/// object/complement.
pub fn is_informative(tree: &DepTree) -> bool {
    let ids = tree.reachable();
    let words = ids.len() + usize::from(!tree.token(*ids.last().unwrap()).text.ends_with(['.', '!', '?']));
    if words < 3 {
        return false;
    }
    let action_verb = ids.iter().any(|&id| {
        let t = tree.token(id);
        t.pos == crate::deptree::Pos::Verb && t.lemma != "be" && !t.has_flag(STRANDED)
    });
    let complement = ids.iter().any(|&id| is_complement(&tree.token(id).dep));
    action_verb || complement
}

/// Drops uninformative sentences and repeats (by normalized text).
pub fn filter(sentences: Vec<SimplifiedSentence>) -> Vec<SimplifiedSentence> {
    let mut seen = HashSet::new();
    sentences
        .into_iter()
        .filter(|s| is_informative(&s.tree) && seen.insert(normalize_for_hash(&s.text)))
        .collect()
}

#[cfg(test)]
mod tests;
