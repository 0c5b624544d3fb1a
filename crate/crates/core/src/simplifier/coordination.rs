//! Coordinated verbs split into one sentence per predicate; coordinated
//! nominals into one sentence per conjunct.

use crate::deptree::{DepLabel, DepTree, Position, TokenId};

use super::util::{attach_before_punct, first_reachable, is_comma, lend_subject, object_of, rewrite, subject_of};

/// Verbs that rarely take a direct object; never lend them one.
const INTRANSITIVE: [&str; 24] = [
    "arrive", "come", "cry", "dance", "die", "fall", "go", "jump", "kneel", "laugh", "lie", "nod",
    "pause", "run", "scream", "shout", "sigh", "sit", "sleep", "smile", "stand", "wait", "walk", "yell",
];
use super::Rewrite;

pub(crate) fn identify(tree: &DepTree) -> bool {
    first_reachable(tree, |t| t.head != 0 && matches!(t.dep, DepLabel::Conj | DepLabel::Cc)).is_some()
}

fn verbish(tree: &DepTree, id: TokenId) -> bool {
    let t = tree.token(id);
    t.is_verbal() || t.tag.starts_with("VB")
}

/// The conjunct chain hanging off `main`: direct conj children, and conj
/// children of those, in surface order.
fn conjuncts(tree: &DepTree, main: TokenId) -> Vec<TokenId> {
    let mut out = Vec::new();
    let mut frontier = vec![main];
    while let Some(h) = frontier.pop() {
        for c in tree.rights(h).iter().chain(tree.lefts(h)) {
            if tree.token(*c).dep == DepLabel::Conj {
                out.push(*c);
                frontier.push(*c);
            }
        }
    }
    out.sort();
    out
}

/// "He opens and closes the door": the object parsed under the second verb
/// belongs to both. Only when the first verb has nothing after it, the verbs
/// are joined directly, and the second has a plain object.
fn should_borrow_object(tree: &DepTree, main: TokenId, conjs: &[TokenId]) -> bool {
    let Some(&conj) = conjs.first() else {
        return false;
    };
    if !verbish(tree, conj) || object_of(tree, main).is_some() {
        return false;
    }
    if INTRANSITIVE.contains(&tree.token(main).lemma.as_str()) {
        return false;
    }
    let between_ok = tree
        .rights(main)
        .iter()
        .take_while(|&&c| c != conj)
        .all(|&c| tree.token(c).dep == DepLabel::Cc);
    let plain_object = tree
        .rights(conj)
        .iter()
        .filter(|&&c| tree.token(c).dep != DepLabel::Punct)
        .map(|&c| &tree.token(c).dep)
        .eq([&DepLabel::Dobj]);
    between_ok && plain_object
}

pub(crate) fn transform(tree: &DepTree) -> Vec<Rewrite> {
    let Some(first) = first_reachable(tree, |t| t.head != 0 && t.dep == DepLabel::Conj) else {
        // A stray coordinator with nothing to join.
        let Some(cc) = first_reachable(tree, |t| t.head != 0 && t.dep == DepLabel::Cc) else {
            return Vec::new();
        };
        let mut work = tree.clone();
        work.remove(cc);
        return vec![rewrite(&work, work.root(), 0)];
    };
    let mut work = tree.clone();
    let main = work.head_of(first).unwrap();
    let conjs = conjuncts(&work, main);

    // Coordinators and the commas separating conjuncts go first.
    for &h in std::iter::once(&main).chain(&conjs) {
        let kids: Vec<TokenId> = work.children(h).collect();
        for (i, &c) in kids.iter().enumerate() {
            let t = work.token(c);
            let next_joins = kids
                .get(i + 1)
                .is_some_and(|&n| matches!(work.token(n).dep, DepLabel::Cc | DepLabel::Conj));
            if t.dep == DepLabel::Cc || (is_comma(t) && next_joins) || t.dep.as_str() == "preconj" {
                work.remove(c);
            }
        }
    }
    for &c in &conjs {
        work.remove(c);
    }

    let verbs = verbish(&work, main);
    if verbs && should_borrow_object(tree, main, &conjs) {
        let obj = work.child_by_dep(conjs[0], &[DepLabel::Dobj]).unwrap();
        let copy = work.copy_subtree(obj);
        attach_before_punct(&mut work, copy, main);
    }

    let mut out = vec![rewrite(&work, work.root(), 0)];
    let mut step = 0;
    for &conj in &conjs {
        let mut branch = work.clone();
        if verbs && verbish(&branch, conj) {
            let shares_subject = subject_of(&branch, conj).is_none();
            if shares_subject {
                lend_subject(&mut branch, main, conj);
                step += 1;
            }
            let delta = if shares_subject { step } else { 0 };
            match branch.head_of(main) {
                Some(outer) => {
                    let dep = branch.token(main).dep.clone();
                    branch.attach(conj, outer, Position::Replace(main)).unwrap();
                    branch.token_mut(conj).dep = dep;
                    out.push(rewrite(&branch, branch.root(), delta));
                }
                None => out.push(rewrite(&branch, conj, delta)),
            }
        } else {
            match branch.head_of(main) {
                Some(outer) => {
                    let dep = branch.token(main).dep.clone();
                    branch.attach(conj, outer, Position::Replace(main)).unwrap();
                    branch.token_mut(conj).dep = dep;
                    out.push(rewrite(&branch, branch.root(), 0));
                }
                None => out.push(rewrite(&branch, conj, 0)),
            }
        }
    }
    out
}
