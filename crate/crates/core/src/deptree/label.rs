use std::convert::Infallible;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Coarse part of speech.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pos {
    Verb,
    Noun,
    Pron,
    Adj,
    Adv,
    Adp,
    Det,
    Aux,
    Part,
    Propn,
    Num,
    Punct,
    Other,
}

impl Pos {
    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Verb => "VERB",
            Pos::Noun => "NOUN",
            Pos::Pron => "PRON",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::Adp => "ADP",
            Pos::Det => "DET",
            Pos::Aux => "AUX",
            Pos::Part => "PART",
            Pos::Propn => "PROPN",
            Pos::Num => "NUM",
            Pos::Punct => "PUNCT",
            Pos::Other => "OTHER",
        }
    }
}

impl FromStr for Pos {
    type Err = Infallible;

    /// Unknown tags (X, SYM, INTJ, CCONJ, ...) collapse to `Other`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "VERB" => Pos::Verb,
            "NOUN" => Pos::Noun,
            "PRON" => Pos::Pron,
            "ADJ" => Pos::Adj,
            "ADV" => Pos::Adv,
            "ADP" => Pos::Adp,
            "DET" => Pos::Det,
            "AUX" => Pos::Aux,
            "PART" => Pos::Part,
            "PROPN" => Pos::Propn,
            "NUM" => Pos::Num,
            "PUNCT" => Pos::Punct,
            _ => Pos::Other,
        })
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Pos {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Pos {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(s.parse().unwrap())
    }
}

/// Dependency relation, in the label style of the parser the fixtures come from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DepLabel {
    Root,
    Cc,
    Conj,
    Preconj,
    Appos,
    Relcl,
    Advcl,
    Acl,
    Ccomp,
    Xcomp,
    Csubj,
    Csubjpass,
    Nsubj,
    Nsubjpass,
    Auxpass,
    Aux,
    Agent,
    Dobj,
    Pobj,
    Prep,
    Mark,
    Attr,
    Advmod,
    Poss,
    Det,
    Compound,
    Amod,
    Dative,
    Punct,
    Neg,
    Other(String),
}

impl DepLabel {
    pub fn as_str(&self) -> &str {
        match self {
            DepLabel::Root => "ROOT",
            DepLabel::Cc => "cc",
            DepLabel::Conj => "conj",
            DepLabel::Preconj => "preconj",
            DepLabel::Appos => "appos",
            DepLabel::Relcl => "relcl",
            DepLabel::Advcl => "advcl",
            DepLabel::Acl => "acl",
            DepLabel::Ccomp => "ccomp",
            DepLabel::Xcomp => "xcomp",
            DepLabel::Csubj => "csubj",
            DepLabel::Csubjpass => "csubjpass",
            DepLabel::Nsubj => "nsubj",
            DepLabel::Nsubjpass => "nsubjpass",
            DepLabel::Auxpass => "auxpass",
            DepLabel::Aux => "aux",
            DepLabel::Agent => "agent",
            DepLabel::Dobj => "dobj",
            DepLabel::Pobj => "pobj",
            DepLabel::Prep => "prep",
            DepLabel::Mark => "mark",
            DepLabel::Attr => "attr",
            DepLabel::Advmod => "advmod",
            DepLabel::Poss => "poss",
            DepLabel::Det => "det",
            DepLabel::Compound => "compound",
            DepLabel::Amod => "amod",
            DepLabel::Dative => "dative",
            DepLabel::Punct => "punct",
            DepLabel::Neg => "neg",
            DepLabel::Other(s) => s,
        }
    }

    pub fn is_subject(&self) -> bool {
        matches!(
            self,
            DepLabel::Nsubj | DepLabel::Nsubjpass | DepLabel::Csubj | DepLabel::Csubjpass
        ) || self.as_str() == "expl"
    }
}

impl FromStr for DepLabel {
    type Err = Infallible;

    /// Never fails: unknown labels become `Other`. Universal Dependencies
    /// spellings are folded onto the inventory above.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "ROOT" | "root" => DepLabel::Root,
            "cc" => DepLabel::Cc,
            "conj" => DepLabel::Conj,
            "preconj" | "cc:preconj" => DepLabel::Preconj,
            "appos" => DepLabel::Appos,
            "relcl" | "acl:relcl" => DepLabel::Relcl,
            "advcl" => DepLabel::Advcl,
            "acl" => DepLabel::Acl,
            "ccomp" => DepLabel::Ccomp,
            "xcomp" => DepLabel::Xcomp,
            "csubj" => DepLabel::Csubj,
            "csubjpass" | "csubj:pass" => DepLabel::Csubjpass,
            "nsubj" => DepLabel::Nsubj,
            "nsubjpass" | "nsubj:pass" => DepLabel::Nsubjpass,
            "auxpass" | "aux:pass" => DepLabel::Auxpass,
            "aux" => DepLabel::Aux,
            "agent" => DepLabel::Agent,
            "dobj" | "obj" => DepLabel::Dobj,
            "pobj" | "obl" => DepLabel::Pobj,
            "prep" => DepLabel::Prep,
            "mark" => DepLabel::Mark,
            "attr" => DepLabel::Attr,
            "advmod" => DepLabel::Advmod,
            "poss" | "nmod:poss" => DepLabel::Poss,
            "det" => DepLabel::Det,
            "compound" => DepLabel::Compound,
            "amod" => DepLabel::Amod,
            "dative" | "iobj" => DepLabel::Dative,
            "punct" => DepLabel::Punct,
            "neg" => DepLabel::Neg,
            other => DepLabel::Other(other.to_string()),
        })
    }
}

impl fmt::Display for DepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for DepLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for DepLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(s.parse().unwrap())
    }
}
