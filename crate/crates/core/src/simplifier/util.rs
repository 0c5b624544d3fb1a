//! Small tree helpers shared by the analyzers.

use crate::deptree::{
    object_case, subject_case, DepLabel, DepToken, DepTree, Pos, Position, TokenId,
};

use super::Rewrite;

/// First reachable token (in surface order) satisfying `pred`.
pub(crate) fn first_reachable(tree: &DepTree, pred: impl Fn(&DepToken) -> bool) -> Option<TokenId> {
    tree.reachable().into_iter().find(|&id| pred(tree.token(id)))
}

pub(crate) fn first_with_dep(tree: &DepTree, dep: &DepLabel) -> Option<TokenId> {
    first_reachable(tree, |t| &t.dep == dep && t.head != 0)
}

pub(crate) fn subject_of(tree: &DepTree, verb: TokenId) -> Option<TokenId> {
    tree.child_with(verb, |t| t.dep.is_subject())
}

pub(crate) fn object_of(tree: &DepTree, verb: TokenId) -> Option<TokenId> {
    tree.child_by_dep(verb, &[DepLabel::Dobj])
}

pub(crate) fn is_comma(t: &DepToken) -> bool {
    matches!(t.text.as_str(), "," | ";" | "--" | "-")
}

/// Cuts `child` from its head and tidies the commas around it: a comma
/// directly before the child goes, and if one also follows (a parenthetical)
/// that goes too. A lone trailing comma stays, it usually separates what
/// follows.
pub(crate) fn cut_clause(tree: &mut DepTree, child: TokenId) {
    let Some(head) = tree.head_of(child) else {
        return;
    };
    let siblings: Vec<TokenId> = tree.children(head).collect();
    let pos = siblings.iter().position(|&c| c == child).unwrap();
    let before = pos
        .checked_sub(1)
        .map(|i| siblings[i])
        .filter(|&s| is_comma(tree.token(s)) && tree.subtree(s).len() == 1);
    let after = siblings
        .get(pos + 1)
        .copied()
        .filter(|&s| is_comma(tree.token(s)) && tree.subtree(s).len() == 1);
    if let Some(b) = before {
        tree.remove(b);
        if let Some(a) = after {
            tree.remove(a);
        }
    }
    tree.remove(child);
}

/// Attaches `child` to the right of `head`, ahead of any trailing punctuation.
pub(crate) fn attach_before_punct(tree: &mut DepTree, child: TokenId, head: TokenId) {
    let first_punct = tree
        .rights(head)
        .iter()
        .copied()
        .find(|&c| tree.token(c).pos == Pos::Punct);
    let position = match first_punct {
        Some(p) => Position::Before(p),
        None => Position::RightMost,
    };
    tree.attach(child, head, position).expect("attach to a fresh copy cannot cycle");
}

pub(crate) fn to_object_case(tree: &mut DepTree, id: TokenId) {
    let t = tree.token_mut(id);
    if t.pos == Pos::Pron {
        if let Some(o) = object_case(&t.text) {
            t.text = o.to_string();
        }
    }
}

pub(crate) fn to_subject_case(tree: &mut DepTree, id: TokenId) {
    let t = tree.token_mut(id);
    if t.pos == Pos::Pron {
        if let Some(s) = subject_case(&t.text) {
            t.text = s.to_string();
        }
    }
}

/// Copies the subject of `from` and hangs it as the left-most child of `to`.
/// Returns false when `from` has no subject to lend.
pub(crate) fn lend_subject(tree: &mut DepTree, from: TokenId, to: TokenId) -> bool {
    let Some(subj) = subject_of(tree, from) else {
        return false;
    };
    let copy = tree.copy_subtree(subj);
    tree.token_mut(copy).dep = DepLabel::Nsubj;
    to_subject_case(tree, copy);
    tree.attach(copy, to, Position::LeftMost).expect("fresh copy");
    true
}

pub(crate) fn new_word(tree: &mut DepTree, text: &str, lemma: &str, pos: Pos, tag: &str, dep: DepLabel) -> TokenId {
    tree.insert_token(DepToken::new(text, lemma, pos, tag, dep))
}

pub(crate) fn rewrite(tree: &DepTree, root: TokenId, temporal_delta: i32) -> Rewrite {
    Rewrite {
        tree: tree.extract(root),
        temporal_delta,
    }
}
