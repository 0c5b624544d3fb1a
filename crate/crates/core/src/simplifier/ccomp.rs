//! Clausal complements: "He says that she left" keeps "she left" as its own
//! sentence and marks "says" as having lost its content.

use crate::deptree::{DepLabel, DepTree, Pos, Position, TokenId};

use super::util::{cut_clause, first_with_dep, lend_subject, object_of, rewrite, subject_of, to_subject_case};
use super::{Rewrite, STRANDED};

pub(crate) fn identify(tree: &DepTree) -> Option<TokenId> {
    first_with_dep(tree, &DepLabel::Ccomp)
}

pub(crate) fn transform(tree: &DepTree) -> Vec<Rewrite> {
    let Some(clause) = identify(tree) else {
        return Vec::new();
    };
    let mut work = tree.clone();
    let main = work.head_of(clause).unwrap();
    cut_clause(&mut work, clause);
    let marks: Vec<TokenId> = work
        .children(clause)
        .filter(|&c| work.token(c).dep == DepLabel::Mark)
        .collect();
    for m in marks {
        work.remove(m);
    }

    match subject_of(&work, clause) {
        Some(s) if is_demonstrative(&work, s) => {
            if let Some(obj) = object_of(&work, main) {
                let copy = work.copy_subtree(obj);
                work.attach(copy, clause, Position::Replace(s)).unwrap();
                work.token_mut(copy).dep = DepLabel::Nsubj;
                to_subject_case(&mut work, copy);
            }
        }
        Some(_) => {}
        None => {
            lend_subject(&mut work, main, clause);
        }
    }

    let keeps_content = work.children(main).any(|c| {
        matches!(
            work.token(c).dep.as_str(),
            "dobj" | "attr" | "acomp" | "xcomp" | "dative" | "oprd"
        )
    });
    if !keeps_content {
        work.token_mut(main).set_flag(STRANDED);
    }
    vec![rewrite(&work, clause, 0), rewrite(&work, work.root(), 0)]
}

fn is_demonstrative(tree: &DepTree, id: TokenId) -> bool {
    let t = tree.token(id);
    tree.lefts(id).is_empty()
        && tree.rights(id).is_empty()
        && (t.pos == Pos::Det || matches!(t.lemma.as_str(), "that" | "this"))
}
