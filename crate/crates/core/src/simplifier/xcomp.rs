//! Open clausal complements. "The sophomore comes running through the
//! kitchen" splits in two; "He wants to leave" collapses to "He leaves".

use crate::deptree::{correct_verb_tense, DepLabel, DepTree, Position, TokenId};

use super::util::{first_reachable, lend_subject, rewrite, subject_of};
use super::Rewrite;

pub(crate) fn identify(tree: &DepTree) -> Option<TokenId> {
    first_reachable(tree, |t| {
        t.head != 0
            && t.dep == DepLabel::Xcomp
            && (t.is_verbal() || t.tag.starts_with("VB"))
            && {
                let h = tree.token(t.head);
                h.is_verbal() || h.tag.starts_with("VB")
            }
    })
}

pub(crate) fn transform(tree: &DepTree) -> Vec<Rewrite> {
    let Some(clause) = identify(tree) else {
        return Vec::new();
    };
    let mut work = tree.clone();
    let governor = work.head_of(clause).unwrap();
    let to = work.child_with(clause, |t| t.dep == DepLabel::Aux && t.lemma == "to");

    work.remove(clause);
    if subject_of(&work, clause).is_none() {
        lend_subject(&mut work, governor, clause);
    }

    match to {
        None => vec![rewrite(&work, clause, 0), rewrite(&work, work.root(), 0)],
        Some(to) => {
            work.remove(to);
            correct_verb_tense(&mut work, clause);
            match work.head_of(governor) {
                Some(outer) => {
                    let dep = work.token(governor).dep.clone();
                    work.attach(clause, outer, Position::Replace(governor)).unwrap();
                    work.token_mut(clause).dep = dep;
                    vec![rewrite(&work, work.root(), 0)]
                }
                None => vec![rewrite(&work, clause, 0)],
            }
        }
    }
}
