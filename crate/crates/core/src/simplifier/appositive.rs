//! "Kevin, a doctor, reads" becomes "Kevin reads" plus "Kevin is a doctor".

use crate::deptree::{DepLabel, DepTree, Pos, Position, TokenId};

use super::util::{cut_clause, first_reachable, new_word, rewrite};
use super::Rewrite;

pub(crate) fn identify(tree: &DepTree) -> Option<TokenId> {
    first_reachable(tree, |t| {
        t.head != 0 && t.dep == DepLabel::Appos && tree.token(t.head).is_nominal()
    })
}

pub(crate) fn transform(tree: &DepTree) -> Vec<Rewrite> {
    let Some(appos) = identify(tree) else {
        return Vec::new();
    };
    let mut work = tree.clone();
    let head = work.head_of(appos).unwrap();
    cut_clause(&mut work, appos);
    let main = rewrite(&work, work.root(), 0);

    let subject = work.copy_subtree(head);
    work.token_mut(subject).dep = DepLabel::Nsubj;
    if let Some(det) = work.child_by_dep(subject, &[DepLabel::Det]) {
        let t = work.token_mut(det);
        if matches!(t.lemma.as_str(), "a" | "an") {
            t.text = if t.text.starts_with(char::is_uppercase) { "The" } else { "the" }.into();
            t.lemma = "the".into();
        }
    }
    let copula = new_word(&mut work, "is", "be", Pos::Aux, "VBZ", DepLabel::Root);
    work.attach(subject, copula, Position::LeftMost).unwrap();
    // Stray commas inside the appositive phrase would dangle at the edges.
    let strays: Vec<TokenId> = work
        .children(appos)
        .filter(|&c| work.token(c).pos == Pos::Punct)
        .collect();
    for c in strays {
        work.remove(c);
    }
    work.attach(appos, copula, Position::RightMost).unwrap();
    work.token_mut(appos).dep = DepLabel::Attr;
    vec![main, rewrite(&work, copula, 0)]
}
