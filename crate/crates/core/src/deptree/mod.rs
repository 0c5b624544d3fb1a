//! Dependency trees and the surgery primitives the simplifier rewrites them with.
//!
//! A [`DepTree`] is an arena of tokens. Token ids are 1-based arena indices and
//! never change while a tree is being rewritten; tokens that get cut or removed
//! stay in the arena but are no longer reachable from the root. Each head keeps
//! explicit, ordered left and right child lists, so surgery can move material
//! around without renumbering. [`DepTree::extract`] turns any reachable subtree
//! back into a compact tree whose ids follow linear order again.

mod conll;
mod label;
mod realize;
mod tense;

pub use conll::{load_parsed, write_parsed};
pub use label::{DepLabel, Pos};
pub use realize::{normalize_for_hash, realize, realize_tokens};
pub use tense::{
    correct_verb_tense, inflect_present, lemma_of_past, object_case, subject_case, subject_number,
    Number,
};

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by tree loading and surgery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("sentence starting at line {line}: head cycle through tokens {cycle:?}")]
    Cycle { line: usize, cycle: Vec<u32> },
    #[error("sentence starting at line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("token {0} does not exist")]
    NoSuchToken(u32),
    #[error("cannot cut the root token {0}")]
    CutRoot(u32),
    #[error("attaching {child} under {head} would create a cycle")]
    WouldCycle { child: u32, head: u32 },
    #[error("token {0} is not a child of the requested head")]
    NotAChild(u32),
}

/// Token id: 1-based index inside one tree. Zero is reserved for "no head".
pub type TokenId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepToken {
    pub id: TokenId,
    pub text: String,
    pub lemma: String,
    pub pos: Pos,
    pub tag: String,
    pub dep: DepLabel,
    /// 0 for the root and for detached subtree roots.
    pub head: TokenId,
    /// Free-form flags kept in the first reserved interchange column.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub misc: String,
}

impl DepToken {
    pub fn new(text: &str, lemma: &str, pos: Pos, tag: &str, dep: DepLabel) -> Self {
        DepToken {
            id: 0,
            text: text.to_string(),
            lemma: lemma.to_lowercase(),
            pos,
            tag: tag.to_string(),
            dep,
            head: 0,
            misc: String::new(),
        }
    }

    pub fn is_verbal(&self) -> bool {
        matches!(self.pos, Pos::Verb | Pos::Aux)
    }

    pub fn is_nominal(&self) -> bool {
        matches!(self.pos, Pos::Noun | Pos::Propn | Pos::Pron | Pos::Num)
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.misc.split('|').any(|f| f == flag)
    }

    pub fn set_flag(&mut self, flag: &str) {
        if self.has_flag(flag) {
            return;
        }
        if self.misc.is_empty() {
            self.misc = flag.to_string();
        } else {
            self.misc.push('|');
            self.misc.push_str(flag);
        }
    }
}

/// Which side of its head a child sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Where [`DepTree::attach`] puts a child among its new head's children.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    LeftMost,
    /// Last left child, directly before the head.
    LeftInner,
    /// First right child, directly after the head.
    RightInner,
    RightMost,
    /// Take the slot of an existing child, which is detached.
    Replace(TokenId),
    Before(TokenId),
    After(TokenId),
    /// Explicit slot, as returned by [`DepTree::cut_edge`].
    Slot(Side, usize),
}

/// Where a cut child used to hang.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Detached {
    pub child: TokenId,
    pub head: TokenId,
    pub side: Side,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepTree {
    tokens: Vec<DepToken>,
    lefts: Vec<Vec<TokenId>>,
    rights: Vec<Vec<TokenId>>,
    root: TokenId,
}

impl DepTree {
    /// Builds a tree from tokens whose ids are `1..=n` in linear order.
    /// Children are partitioned by linear position relative to their head.
    pub fn from_tokens(tokens: Vec<DepToken>) -> Result<DepTree, TreeError> {
        Self::from_tokens_at(tokens, 1)
    }

    pub(crate) fn from_tokens_at(tokens: Vec<DepToken>, line: usize) -> Result<DepTree, TreeError> {
        let n = tokens.len();
        if n == 0 {
            return Err(TreeError::Invalid {
                line,
                message: "empty sentence".into(),
            });
        }
        for (i, t) in tokens.iter().enumerate() {
            if t.id as usize != i + 1 {
                return Err(TreeError::Invalid {
                    line,
                    message: format!("token ids must be 1..{n} in order, found {} at {}", t.id, i + 1),
                });
            }
            if t.head == t.id {
                return Err(TreeError::Cycle {
                    line,
                    cycle: vec![t.id],
                });
            }
            if t.head as usize > n {
                return Err(TreeError::Invalid {
                    line,
                    message: format!("token {} points to missing head {}", t.id, t.head),
                });
            }
        }
        let roots: Vec<&DepToken> = tokens.iter().filter(|t| t.head == 0).collect();
        if roots.len() != 1 {
            if let Some(cycle) = find_cycle(&tokens) {
                return Err(TreeError::Cycle { line, cycle });
            }
            return Err(TreeError::Invalid {
                line,
                message: format!("expected exactly one root, found {}", roots.len()),
            });
        }
        if roots[0].dep != DepLabel::Root {
            return Err(TreeError::Invalid {
                line,
                message: format!("root token {} must carry the ROOT label", roots[0].id),
            });
        }
        if let Some(cycle) = find_cycle(&tokens) {
            return Err(TreeError::Cycle { line, cycle });
        }
        if let Some(t) = tokens.iter().find(|t| t.head != 0 && t.dep == DepLabel::Root) {
            return Err(TreeError::Invalid {
                line,
                message: format!("non-root token {} carries the ROOT label", t.id),
            });
        }
        let root = roots[0].id;
        let mut lefts = vec![Vec::new(); n];
        let mut rights = vec![Vec::new(); n];
        for t in &tokens {
            if t.head == 0 {
                continue;
            }
            let h = (t.head - 1) as usize;
            if t.id < t.head {
                lefts[h].push(t.id);
            } else {
                rights[h].push(t.id);
            }
        }
        Ok(DepTree {
            tokens,
            lefts,
            rights,
            root,
        })
    }

    pub fn root(&self) -> TokenId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[DepToken] {
        &self.tokens
    }

    pub fn contains(&self, id: TokenId) -> bool {
        id >= 1 && (id as usize) <= self.tokens.len()
    }

    pub fn token(&self, id: TokenId) -> &DepToken {
        &self.tokens[(id - 1) as usize]
    }

    pub fn token_mut(&mut self, id: TokenId) -> &mut DepToken {
        &mut self.tokens[(id - 1) as usize]
    }

    pub fn lefts(&self, id: TokenId) -> &[TokenId] {
        &self.lefts[(id - 1) as usize]
    }

    pub fn rights(&self, id: TokenId) -> &[TokenId] {
        &self.rights[(id - 1) as usize]
    }

    /// Left then right children, in order.
    pub fn children(&self, id: TokenId) -> impl Iterator<Item = TokenId> + '_ {
        self.lefts(id).iter().chain(self.rights(id).iter()).copied()
    }

    pub fn head_of(&self, id: TokenId) -> Option<TokenId> {
        match self.token(id).head {
            0 => None,
            h => Some(h),
        }
    }

    pub fn child_with(&self, id: TokenId, pred: impl Fn(&DepToken) -> bool) -> Option<TokenId> {
        self.children(id).find(|&c| pred(self.token(c)))
    }

    pub fn child_by_dep(&self, id: TokenId, deps: &[DepLabel]) -> Option<TokenId> {
        self.child_with(id, |t| deps.contains(&t.dep))
    }

    /// Token ids reachable from `id`, in realization order.
    pub fn subtree(&self, id: TokenId) -> Vec<TokenId> {
        let mut out = Vec::new();
        self.walk(id, &mut out);
        out
    }

    fn walk(&self, id: TokenId, out: &mut Vec<TokenId>) {
        for &c in self.lefts(id) {
            self.walk(c, out);
        }
        out.push(id);
        for &c in self.rights(id) {
            self.walk(c, out);
        }
    }

    /// Tokens reachable from the root, in realization order.
    pub fn reachable(&self) -> Vec<TokenId> {
        self.subtree(self.root)
    }

    pub fn is_reachable(&self, id: TokenId) -> bool {
        let mut cur = id;
        loop {
            if cur == self.root {
                return true;
            }
            match self.head_of(cur) {
                Some(h) => cur = h,
                None => return false,
            }
        }
    }

    /// True when `ancestor` lies on the head path from `id` (inclusive).
    pub fn dominates(&self, ancestor: TokenId, id: TokenId) -> bool {
        let mut cur = id;
        let mut steps = 0;
        loop {
            if cur == ancestor {
                return true;
            }
            match self.head_of(cur) {
                Some(h) => cur = h,
                None => return false,
            }
            steps += 1;
            if steps > self.tokens.len() {
                return false;
            }
        }
    }

    fn check(&self, id: TokenId) -> Result<(), TreeError> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(TreeError::NoSuchToken(id))
        }
    }

    /// Detaches `child` from its head. The child keeps its own subtree and
    /// becomes the root of a detached fragment.
    pub fn cut_edge(&mut self, child: TokenId) -> Result<Detached, TreeError> {
        self.check(child)?;
        if child == self.root {
            return Err(TreeError::CutRoot(child));
        }
        let head = self.token(child).head;
        if head == 0 {
            return Err(TreeError::NotAChild(child));
        }
        let h = (head - 1) as usize;
        let (side, index) = if let Some(i) = self.lefts[h].iter().position(|&c| c == child) {
            self.lefts[h].remove(i);
            (Side::Left, i)
        } else if let Some(i) = self.rights[h].iter().position(|&c| c == child) {
            self.rights[h].remove(i);
            (Side::Right, i)
        } else {
            return Err(TreeError::NotAChild(child));
        };
        self.token_mut(child).head = 0;
        self.debug_check();
        Ok(Detached {
            child,
            head,
            side,
            index,
        })
    }

    /// Cuts `child` if attached; a no-op for already detached tokens.
    pub fn remove(&mut self, child: TokenId) {
        if child != self.root && self.token(child).head != 0 {
            let _ = self.cut_edge(child);
        }
    }

    /// Hangs `child` (with its subtree) under `head` at `position`.
    pub fn attach(&mut self, child: TokenId, head: TokenId, position: Position) -> Result<(), TreeError> {
        self.check(child)?;
        self.check(head)?;
        if child == self.root || self.dominates(child, head) {
            return Err(TreeError::WouldCycle { child, head });
        }
        if self.token(child).head != 0 {
            self.cut_edge(child)?;
        }
        let h = (head - 1) as usize;
        match position {
            Position::LeftMost => self.lefts[h].insert(0, child),
            Position::LeftInner => self.lefts[h].push(child),
            Position::RightInner => self.rights[h].insert(0, child),
            Position::RightMost => self.rights[h].push(child),
            Position::Slot(Side::Left, i) => {
                let i = i.min(self.lefts[h].len());
                self.lefts[h].insert(i, child)
            }
            Position::Slot(Side::Right, i) => {
                let i = i.min(self.rights[h].len());
                self.rights[h].insert(i, child)
            }
            Position::Replace(old) | Position::Before(old) | Position::After(old) => {
                let (list, i) = if let Some(i) = self.lefts[h].iter().position(|&c| c == old) {
                    (&mut self.lefts[h], i)
                } else if let Some(i) = self.rights[h].iter().position(|&c| c == old) {
                    (&mut self.rights[h], i)
                } else {
                    return Err(TreeError::NotAChild(old));
                };
                match position {
                    Position::Replace(_) => {
                        list[i] = child;
                        self.tokens[(old - 1) as usize].head = 0;
                    }
                    Position::Before(_) => list.insert(i, child),
                    _ => list.insert(i + 1, child),
                }
            }
        }
        self.token_mut(child).head = head;
        self.debug_check();
        Ok(())
    }

    /// Puts a previously cut child back where it was.
    pub fn reattach(&mut self, detached: Detached) -> Result<(), TreeError> {
        self.attach(
            detached.child,
            detached.head,
            Position::Slot(detached.side, detached.index),
        )
    }

    /// Adds a new, detached token to the arena and returns its id.
    pub fn insert_token(&mut self, mut token: DepToken) -> TokenId {
        let id = self.tokens.len() as TokenId + 1;
        token.id = id;
        token.head = 0;
        self.tokens.push(token);
        self.lefts.push(Vec::new());
        self.rights.push(Vec::new());
        id
    }

    /// Deep-copies the subtree under `id`; the copy starts detached.
    pub fn copy_subtree(&mut self, id: TokenId) -> TokenId {
        let mut template = self.token(id).clone();
        template.misc.clear();
        let new_id = self.insert_token(template);
        let lefts = self.lefts(id).to_vec();
        let rights = self.rights(id).to_vec();
        for c in lefts {
            let cc = self.copy_subtree(c);
            self.lefts[(new_id - 1) as usize].push(cc);
            self.token_mut(cc).head = new_id;
        }
        for c in rights {
            let cc = self.copy_subtree(c);
            self.rights[(new_id - 1) as usize].push(cc);
            self.token_mut(cc).head = new_id;
        }
        new_id
    }

    /// Makes `id` the root of the tree. The old root is left detached unless
    /// it is still reachable through `id`.
    pub fn set_root(&mut self, id: TokenId) -> Result<(), TreeError> {
        self.check(id)?;
        let head = self.token(id).head;
        if head != 0 {
            let h = (head - 1) as usize;
            self.lefts[h].retain(|&c| c != id);
            self.rights[h].retain(|&c| c != id);
            self.token_mut(id).head = 0;
        }
        self.root = id;
        self.debug_check();
        Ok(())
    }

    /// Copies the subtree under `id` into a fresh, compact tree. Ids are
    /// reassigned in realization order and `id` becomes the ROOT.
    pub fn extract(&self, id: TokenId) -> DepTree {
        let order = self.subtree(id);
        let mut remap = vec![0u32; self.tokens.len() + 1];
        for (i, &old) in order.iter().enumerate() {
            remap[old as usize] = i as u32 + 1;
        }
        let mut tokens = Vec::with_capacity(order.len());
        for &old in &order {
            let mut t = self.token(old).clone();
            t.id = remap[old as usize];
            if old == id {
                t.head = 0;
                t.dep = DepLabel::Root;
            } else {
                t.head = remap[t.head as usize];
                if t.dep == DepLabel::Root {
                    t.dep = DepLabel::Other("dep".into());
                }
            }
            tokens.push(t);
        }
        let mut lefts = vec![Vec::new(); order.len()];
        let mut rights = vec![Vec::new(); order.len()];
        for &old in &order {
            let new = remap[old as usize] as usize - 1;
            lefts[new] = self.lefts(old).iter().map(|&c| remap[c as usize]).collect();
            rights[new] = self.rights(old).iter().map(|&c| remap[c as usize]).collect();
        }
        DepTree {
            tokens,
            lefts,
            rights,
            root: 1 + order.iter().position(|&o| o == id).unwrap_or(0) as u32,
        }
    }

    /// Compact copy of the tree reachable from the root.
    pub fn compact(&self) -> DepTree {
        self.extract(self.root)
    }

    /// Checks the structural invariants: children index agrees with heads,
    /// no cycles, a single ROOT-labelled root. Detached fragments are allowed.
    pub fn validate(&self) -> Result<(), TreeError> {
        let n = self.tokens.len();
        if self.root == 0 || self.root as usize > n {
            return Err(TreeError::NoSuchToken(self.root));
        }
        if self.token(self.root).head != 0 {
            return Err(TreeError::Invalid {
                line: 0,
                message: "root has a head".into(),
            });
        }
        let mut seen_child = HashSet::new();
        for i in 0..n {
            let head = i as u32 + 1;
            for &c in self.lefts[i].iter().chain(self.rights[i].iter()) {
                if !seen_child.insert(c) {
                    return Err(TreeError::Invalid {
                        line: 0,
                        message: format!("token {c} listed under two heads"),
                    });
                }
                if self.token(c).head != head {
                    return Err(TreeError::Invalid {
                        line: 0,
                        message: format!("children index lists {c} under {head} but its head is {}", self.token(c).head),
                    });
                }
            }
        }
        for t in &self.tokens {
            if t.head != 0 && !seen_child.contains(&t.id) {
                return Err(TreeError::Invalid {
                    line: 0,
                    message: format!("token {} missing from its head's children", t.id),
                });
            }
        }
        if let Some(cycle) = find_cycle(&self.tokens) {
            return Err(TreeError::Cycle { line: 0, cycle });
        }
        Ok(())
    }

    #[inline]
    fn debug_check(&self) {
        #[cfg(debug_assertions)]
        if let Err(e) = self.validate() {
            panic!("tree invariant broken after surgery: {e}");
        }
    }
}

impl fmt::Display for DepTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&realize(self, self.root))
    }
}

fn find_cycle(tokens: &[DepToken]) -> Option<Vec<u32>> {
    let n = tokens.len();
    for start in tokens {
        let mut path = vec![start.id];
        let mut cur = start.head;
        while cur != 0 && (cur as usize) <= n {
            if let Some(p) = path.iter().position(|&x| x == cur) {
                let mut cycle = path[p..].to_vec();
                let min = cycle.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i).unwrap();
                cycle.rotate_left(min);
                return Some(cycle);
            }
            path.push(cur);
            if path.len() > n + 1 {
                break;
            }
            cur = tokens[(cur - 1) as usize].head;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tok(id: u32, text: &str, lemma: &str, pos: Pos, tag: &str, dep: &str, head: u32) -> DepToken {
        DepToken {
            id,
            text: text.into(),
            lemma: lemma.into(),
            pos,
            tag: tag.into(),
            dep: dep.parse().unwrap(),
            head,
            misc: String::new(),
        }
    }

    fn he_runs() -> DepTree {
        DepTree::from_tokens(vec![
            tok(1, "He", "he", Pos::Pron, "PRP", "nsubj", 2),
            tok(2, "runs", "run", Pos::Verb, "VBZ", "ROOT", 0),
        ])
        .unwrap()
    }

    fn gives() -> DepTree {
        // She gives Kevin a kiss .
        DepTree::from_tokens(vec![
            tok(1, "She", "she", Pos::Pron, "PRP", "nsubj", 2),
            tok(2, "gives", "give", Pos::Verb, "VBZ", "ROOT", 0),
            tok(3, "Kevin", "kevin", Pos::Propn, "NNP", "dative", 2),
            tok(4, "a", "a", Pos::Det, "DT", "det", 5),
            tok(5, "kiss", "kiss", Pos::Noun, "NN", "dobj", 2),
            tok(6, ".", ".", Pos::Punct, ".", "punct", 2),
        ])
        .unwrap()
    }

    #[test]
    fn minimal_tree() {
        let t = he_runs();
        assert_eq!(t.root(), 2);
        assert_eq!(t.token(t.root()).text, "runs");
        assert_eq!(t.lefts(2), &[1]);
    }

    #[test]
    fn self_loop_rejected() {
        let err = DepTree::from_tokens(vec![
            tok(1, "He", "he", Pos::Pron, "PRP", "nsubj", 1),
            tok(2, "runs", "run", Pos::Verb, "VBZ", "ROOT", 0),
        ])
        .unwrap_err();
        assert!(matches!(err, TreeError::Cycle { .. }));
    }

    #[test]
    fn cutting_root_is_refused() {
        let mut t = he_runs();
        assert_eq!(t.cut_edge(2), Err(TreeError::CutRoot(2)));
    }

    #[test]
    fn cut_leaf_drops_one_token() {
        let mut t = gives();
        t.cut_edge(3).unwrap();
        assert_eq!(realize(&t, t.root()), "She gives a kiss.");
        assert_eq!(t.reachable().len(), 5);
    }

    #[test]
    fn cut_then_reattach_restores_surface() {
        let mut t = gives();
        let before = realize(&t, t.root());
        for id in [1, 3, 5, 6, 4] {
            let d = t.cut_edge(id).unwrap();
            t.reattach(d).unwrap();
            assert_eq!(realize(&t, t.root()), before);
        }
    }

    #[test]
    fn attach_under_own_descendant_is_a_cycle() {
        let mut t = gives();
        assert_eq!(
            t.attach(5, 4, Position::RightMost),
            Err(TreeError::WouldCycle { child: 5, head: 4 })
        );
        assert_eq!(t.attach(2, 5, Position::RightMost), Err(TreeError::WouldCycle { child: 2, head: 5 }));
    }

    #[test]
    fn replace_swaps_slot() {
        let mut t = gives();
        let her = t.insert_token(DepToken::new("Ann", "ann", Pos::Propn, "NNP", DepLabel::Dative));
        t.attach(her, 2, Position::Replace(3)).unwrap();
        assert_eq!(realize(&t, t.root()), "She gives Ann a kiss.");
        assert_eq!(t.token(3).head, 0);
    }

    #[test]
    fn extract_renumbers_in_order() {
        let mut t = gives();
        let obj = t.cut_edge(1).unwrap();
        t.attach(obj.child, 2, Position::RightInner).unwrap();
        let c = t.compact();
        c.validate().unwrap();
        let forms: Vec<_> = c.tokens().iter().map(|t| t.text.as_str()).collect();
        assert_eq!(forms, ["gives", "She", "Kevin", "a", "kiss", "."]);
        assert_eq!(c.root(), 1);
        assert!(c.tokens().iter().all(|t| t.head == 0 || t.head != t.id));
    }

    #[test]
    fn copy_subtree_is_independent() {
        let mut t = gives();
        let copy = t.copy_subtree(5);
        t.token_mut(copy).text = "hug".into();
        assert_eq!(realize(&t, 5), "A kiss.");
        assert_eq!(realize(&t, copy), "A hug.");
    }
}
