//! Relative clauses: "the letter which she hands him" becomes a main clause
//! and "she hands him the letter".

use crate::deptree::{DepLabel, DepTree, Pos, Position, TokenId};

use super::util::{
    attach_before_punct, cut_clause, first_with_dep, new_word, rewrite, subject_of, to_object_case,
    to_subject_case,
};
use super::Rewrite;

const WH_TAGS: [&str; 4] = ["WDT", "WP", "WP$", "WRB"];
const CLAUSES: [DepLabel; 5] = [
    DepLabel::Relcl,
    DepLabel::Ccomp,
    DepLabel::Advcl,
    DepLabel::Acl,
    DepLabel::Xcomp,
];

pub(crate) fn identify(tree: &DepTree) -> Option<TokenId> {
    first_with_dep(tree, &DepLabel::Relcl)
}

/// Relative pronoun or adverb of the clause under `anchor`, not looking into
/// nested clauses.
fn wh_word(tree: &DepTree, anchor: TokenId) -> Option<TokenId> {
    let mut stack: Vec<TokenId> = tree.children(anchor).collect();
    let mut found = Vec::new();
    while let Some(id) = stack.pop() {
        let t = tree.token(id);
        if CLAUSES.contains(&t.dep) {
            continue;
        }
        if WH_TAGS.contains(&t.tag.as_str()) {
            found.push(id);
        }
        stack.extend(tree.children(id));
    }
    let order = tree.subtree(anchor);
    found.into_iter().min_by_key(|id| order.iter().position(|o| o == id))
}

pub(crate) fn transform(tree: &DepTree) -> Vec<Rewrite> {
    let Some(anchor) = identify(tree) else {
        return Vec::new();
    };
    let mut work = tree.clone();
    let head = work.head_of(anchor).unwrap();
    cut_clause(&mut work, anchor);
    let main = rewrite(&work, work.root(), 0);

    // "Kim is the one who ..." talks about Kim.
    let mut referent = head;
    if work.token(head).dep == DepLabel::Attr {
        if let Some(cop) = work.head_of(head).filter(|&c| work.token(c).lemma == "be") {
            if let Some(s) = subject_of(&work, cop) {
                referent = s;
            }
        }
    }
    let np = work.copy_subtree(referent);

    match wh_word(&work, anchor) {
        None => place_object(&mut work, np, anchor),
        Some(wh) => {
            let wh_head = work.head_of(wh).unwrap();
            let dep = work.token(wh).dep.clone();
            match dep {
                DepLabel::Dobj => {
                    work.remove(wh);
                    place_object(&mut work, np, anchor);
                }
                DepLabel::Pobj => {
                    work.remove(wh);
                    work.attach(np, wh_head, Position::RightMost).unwrap();
                    work.token_mut(np).dep = DepLabel::Pobj;
                    to_object_case(&mut work, np);
                    // A fronted preposition ("in which he lives") moves after the verb.
                    if work.head_of(wh_head) == Some(anchor) && work.lefts(anchor).contains(&wh_head) {
                        attach_before_punct(&mut work, wh_head, anchor);
                    }
                }
                DepLabel::Advmod => {
                    work.remove(wh);
                    let at = new_word(&mut work, "at", "at", Pos::Adp, "IN", DepLabel::Prep);
                    attach_before_punct(&mut work, at, anchor);
                    work.attach(np, at, Position::RightMost).unwrap();
                    work.token_mut(np).dep = DepLabel::Pobj;
                    to_object_case(&mut work, np);
                }
                DepLabel::Poss => {
                    work.attach(np, wh_head, Position::Replace(wh)).unwrap();
                    work.token_mut(np).dep = DepLabel::Poss;
                    let clitic = new_word(&mut work, "'s", "'s", Pos::Part, "POS", DepLabel::Other("case".into()));
                    work.attach(clitic, np, Position::RightMost).unwrap();
                }
                other => {
                    work.attach(np, wh_head, Position::Replace(wh)).unwrap();
                    if other.is_subject() {
                        to_subject_case(&mut work, np);
                    }
                    work.token_mut(np).dep = other;
                }
            }
        }
    }
    let clause = rewrite(&work, anchor, 0);
    vec![main, clause]
}

/// The referent becomes the direct object, after the verb and any particle
/// or indirect object.
fn place_object(work: &mut DepTree, np: TokenId, verb: TokenId) {
    let lead = work
        .rights(verb)
        .iter()
        .copied()
        .take_while(|&c| matches!(work.token(c).dep.as_str(), "prt" | "dative"))
        .last();
    match lead {
        Some(p) => work.attach(np, verb, Position::After(p)).unwrap(),
        None => work.attach(np, verb, Position::RightInner).unwrap(),
    }
    work.token_mut(np).dep = DepLabel::Dobj;
    to_object_case(work, np);
}
