//! Passive voice to active: "They are illuminated by the glare" becomes
//! "The glare illuminates them". Without an agent, "Somebody" stands in.

use crate::deptree::{correct_verb_tense, DepLabel, DepTree, Pos, Position, TokenId};

use super::util::{first_reachable, new_word, rewrite, to_object_case, to_subject_case};
use super::Rewrite;

/// Returns the passive subject.
pub(crate) fn identify(tree: &DepTree) -> Option<TokenId> {
    first_reachable(tree, |t| {
        t.head != 0 && matches!(t.dep, DepLabel::Nsubjpass | DepLabel::Csubjpass)
    })
}

pub(crate) fn transform(tree: &DepTree) -> Vec<Rewrite> {
    let Some(subject) = identify(tree) else {
        return Vec::new();
    };
    let mut work = tree.clone();
    let verb = work.head_of(subject).unwrap();
    let auxpass: Vec<TokenId> = work
        .children(verb)
        .filter(|&c| work.token(c).dep == DepLabel::Auxpass)
        .collect();
    for a in auxpass {
        work.remove(a);
    }
    let agent = work.child_with(verb, |t| {
        t.dep == DepLabel::Agent || (t.dep == DepLabel::Prep && t.lemma == "by")
    });

    work.attach(subject, verb, Position::RightInner).unwrap();
    work.token_mut(subject).dep = DepLabel::Dobj;
    to_object_case(&mut work, subject);

    match agent {
        Some(by) => {
            let actors: Vec<TokenId> = work.children(by).collect();
            work.remove(by);
            for a in actors {
                work.attach(a, verb, Position::LeftInner).unwrap();
                work.token_mut(a).dep = DepLabel::Nsubj;
                to_subject_case(&mut work, a);
            }
        }
        None => {
            let someone = new_word(&mut work, "Somebody", "somebody", Pos::Pron, "NN", DepLabel::Nsubj);
            work.attach(someone, verb, Position::LeftInner).unwrap();
        }
    }
    correct_verb_tense(&mut work, verb);
    vec![rewrite(&work, work.root(), 0)]
}
