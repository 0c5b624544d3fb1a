//! "Running towards Oz is Steve" becomes "Steve runs towards Oz".

use crate::deptree::{correct_verb_tense, DepLabel, DepTree, Position, Side, TokenId};

use super::util::{first_reachable, rewrite};
use super::Rewrite;

/// Returns (participle, copula, attribute).
pub(crate) fn identify(tree: &DepTree) -> Option<(TokenId, TokenId, TokenId)> {
    let verb = first_reachable(tree, |t| {
        t.head != 0
            && t.dep == DepLabel::Csubj
            && (t.tag == "VBN" || t.tag == "VBG")
            && tree.token(t.head).lemma == "be"
            && tree.rights(t.head).iter().any(|&c| tree.token(c).dep == DepLabel::Attr)
    })?;
    let copula = tree.head_of(verb)?;
    let attr = tree.child_by_dep(copula, &[DepLabel::Attr])?;
    Some((verb, copula, attr))
}

pub(crate) fn transform(tree: &DepTree) -> Vec<Rewrite> {
    let Some((verb, copula, attr)) = identify(tree) else {
        return Vec::new();
    };
    let mut work = tree.clone();
    let outer = work.head_of(copula);
    work.remove(attr);
    work.remove(verb);
    work.attach(attr, verb, Position::LeftMost).expect("attr is outside the clause");
    work.token_mut(attr).dep = DepLabel::Nsubj;

    // Whatever else hung off the copula moves to the participle.
    let lefts: Vec<TokenId> = work.lefts(copula).to_vec();
    let rights: Vec<TokenId> = work.rights(copula).to_vec();
    for (i, c) in lefts.into_iter().enumerate() {
        work.attach(c, verb, Position::Slot(Side::Left, i)).unwrap();
    }
    for c in rights {
        work.attach(c, verb, Position::RightMost).unwrap();
    }

    correct_verb_tense(&mut work, verb);
    match outer {
        Some(h) => {
            work.attach(verb, h, Position::Replace(copula)).unwrap();
            work.token_mut(verb).dep = work.token(copula).dep.clone();
            vec![rewrite(&work, work.root(), 0)]
        }
        None => vec![rewrite(&work, verb, 0)],
    }
}
