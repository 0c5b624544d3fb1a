//! Drops correlative openers such as "both", "either", "neither".

use crate::deptree::{DepLabel, DepTree, TokenId};

use super::util::{first_reachable, rewrite};
use super::Rewrite;

const KEYWORDS: [&str; 3] = ["both", "either", "neither"];

pub(crate) fn identify(tree: &DepTree) -> Option<TokenId> {
    first_reachable(tree, |t| {
        t.head != 0
            && (t.dep == DepLabel::Preconj
                || (t.dep == DepLabel::Det && KEYWORDS.contains(&t.lemma.as_str())))
    })
}

pub(crate) fn transform(tree: &DepTree) -> Vec<Rewrite> {
    let Some(target) = identify(tree) else {
        return Vec::new();
    };
    let mut work = tree.clone();
    work.remove(target);
    vec![rewrite(&work, work.root(), 0)]
}
