//! Adverbial clauses: "He laughs after he jumps" becomes two sentences whose
//! temporal ids reflect the connective.

use crate::deptree::{DepLabel, DepTree, Pos, Position, TokenId};

use super::util::{cut_clause, first_with_dep, rewrite, subject_of, to_subject_case};
use super::Rewrite;

/// Whether a temporal connective is introduced by a preposition or a
/// subordinating mark. The two readings run in opposite directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkerKind {
    Prep,
    Mark,
}

/// Adjusts the temporal id `current` of a subordinate clause for its
/// connective. Returns whether the connective was temporal, and the new id.
pub fn temporal_shift(word: &str, kind: MarkerKind, current: i32) -> (bool, i32) {
    let sign = match kind {
        MarkerKind::Prep => -1,
        MarkerKind::Mark => 1,
    };
    match word.to_lowercase().as_str() {
        "as" => (true, current),
        "until" | "till" | "before" => (true, current + sign),
        "after" => (true, current - sign),
        _ => (false, current),
    }
}

pub(crate) fn identify(tree: &DepTree) -> Option<TokenId> {
    first_with_dep(tree, &DepLabel::Advcl)
}

pub(crate) fn transform(tree: &DepTree) -> Vec<Rewrite> {
    let Some(clause) = identify(tree) else {
        return Vec::new();
    };
    let mut work = tree.clone();
    let father = work.head_of(clause).unwrap();
    if !work.token(father).is_verbal() {
        work.token_mut(father).pos = Pos::Verb;
    }

    if subject_of(&work, clause).is_none() {
        let source = subject_of(&work, father).or_else(|| {
            let order = work.subtree(father);
            let at = order.iter().position(|&i| i == father).unwrap();
            order[..at].iter().copied().find(|&i| work.token(i).is_nominal())
        });
        if let Some(s) = source {
            let copy = work.copy_subtree(s);
            work.token_mut(copy).dep = DepLabel::Nsubj;
            to_subject_case(&mut work, copy);
            work.attach(copy, clause, Position::LeftMost).unwrap();
        }
    }

    // Connectives go; fronted prepositions ("after which") count as connectives,
    // trailing ones ("into the water") are arguments and stay.
    let mut delta = 0;
    let markers: Vec<(TokenId, MarkerKind)> = work
        .children(clause)
        .filter_map(|c| match work.token(c).dep {
            DepLabel::Mark => Some((c, MarkerKind::Mark)),
            DepLabel::Prep if work.lefts(clause).contains(&c) => Some((c, MarkerKind::Prep)),
            _ => None,
        })
        .collect();
    for (m, kind) in markers {
        delta = temporal_shift(&work.token(m).text, kind, delta).1;
        // "immediately after which": the adverb outlives its preposition.
        let adverbs: Vec<TokenId> = work
            .children(m)
            .filter(|&c| work.token(c).dep == DepLabel::Advmod)
            .collect();
        for a in adverbs {
            work.attach(a, clause, Position::Before(m)).unwrap();
        }
        work.remove(m);
    }

    cut_clause(&mut work, clause);
    vec![rewrite(&work, work.root(), 0), rewrite(&work, clause, delta)]
}
