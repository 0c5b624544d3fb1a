//! Clausal noun modifiers: "a wall painted by Ann" yields "a wall" in the
//! main sentence and "A wall is painted by Ann" on its own.

use crate::deptree::{correct_verb_tense, DepLabel, DepTree, Pos, Position, TokenId};

use super::util::{cut_clause, first_reachable, new_word, rewrite, to_subject_case};
use super::Rewrite;

pub(crate) fn identify(tree: &DepTree) -> Option<TokenId> {
    first_reachable(tree, |t| {
        t.head != 0
            && t.dep == DepLabel::Acl
            && (t.is_verbal() || t.tag.starts_with("VB"))
            && tree.token(t.head).is_nominal()
    })
}

pub(crate) fn transform(tree: &DepTree) -> Vec<Rewrite> {
    let Some(clause) = identify(tree) else {
        return Vec::new();
    };
    let mut work = tree.clone();
    let noun = work.head_of(clause).unwrap();
    cut_clause(&mut work, clause);
    let main = rewrite(&work, work.root(), 0);

    let auxes: Vec<TokenId> = work
        .lefts(clause)
        .iter()
        .copied()
        .filter(|&c| matches!(work.token(c).dep, DepLabel::Aux | DepLabel::Auxpass))
        .collect();
    for a in auxes {
        work.remove(a);
    }
    let subject = work.copy_subtree(noun);
    to_subject_case(&mut work, subject);
    work.attach(subject, clause, Position::LeftMost).unwrap();
    // A bare participle describes a state the noun is in.
    if work.token(clause).tag == "VBN" {
        work.token_mut(subject).dep = DepLabel::Nsubjpass;
        let be = new_word(&mut work, "is", "be", Pos::Aux, "VBZ", DepLabel::Auxpass);
        work.attach(be, clause, Position::After(subject)).unwrap();
    } else {
        work.token_mut(subject).dep = DepLabel::Nsubj;
    }
    correct_verb_tense(&mut work, clause);
    vec![main, rewrite(&work, clause, 0)]
}
