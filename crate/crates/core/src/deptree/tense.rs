//! Verb-tense correction: rewrite a verb to simple present agreeing with its
//! subject, collapsing progressive/perfect auxiliaries into the finite form.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::{DepLabel, DepTree, TokenId};

/// Grammatical number/person of a subject, as far as present-tense
/// agreement cares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Number {
    ThirdSingular,
    FirstSingular,
    Other,
}

// lemma past participle, one verb per entry
const IRREGULAR: &str = "\
arise arose arisen|awake awoke awoken|be was been|be were been|bear bore borne|beat beat beaten|\
become became become|begin began begun|bend bent bent|bet bet bet|bind bound bound|bite bit bitten|\
bleed bled bled|blow blew blown|break broke broken|breed bred bred|bring brought brought|\
build built built|burn burnt burnt|burst burst burst|buy bought bought|cast cast cast|catch caught caught|\
choose chose chosen|cling clung clung|come came come|cost cost cost|creep crept crept|cut cut cut|\
deal dealt dealt|dig dug dug|dive dove dived|do did done|draw drew drawn|dream dreamt dreamt|\
drink drank drunk|drive drove driven|eat ate eaten|fall fell fallen|feed fed fed|feel felt felt|\
fight fought fought|find found found|flee fled fled|fling flung flung|fly flew flown|forbid forbade forbidden|\
forget forgot forgotten|forgive forgave forgiven|freeze froze frozen|get got gotten|get got got|\
give gave given|go went gone|grind ground ground|grow grew grown|hang hung hung|have had had|\
hear heard heard|hide hid hidden|hit hit hit|hold held held|hurt hurt hurt|keep kept kept|\
kneel knelt knelt|know knew known|lay laid laid|lead led led|lean leant leant|leap leapt leapt|\
learn learnt learnt|leave left left|lend lent lent|let let let|lie lay lain|light lit lit|\
lose lost lost|make made made|mean meant meant|meet met met|mistake mistook mistaken|\
overcome overcame overcome|pay paid paid|prove proved proven|put put put|quit quit quit|read read read|\
rid rid rid|ride rode ridden|ring rang rung|rise rose risen|run ran run|say said said|see saw seen|\
seek sought sought|sell sold sold|send sent sent|set set set|sew sewed sewn|shake shook shaken|\
shed shed shed|shine shone shone|shoot shot shot|show showed shown|shrink shrank shrunk|shut shut shut|\
sing sang sung|sink sank sunk|sit sat sat|slay slew slain|sleep slept slept|slide slid slid|\
sling slung slung|slit slit slit|smell smelt smelt|speak spoke spoken|speed sped sped|spell spelt spelt|\
spend spent spent|spill spilt spilt|spin spun spun|spit spat spat|split split split|spread spread spread|\
spring sprang sprung|stand stood stood|steal stole stolen|stick stuck stuck|sting stung stung|\
stink stank stunk|stride strode stridden|strike struck struck|string strung strung|strive strove striven|\
swear swore sworn|sweep swept swept|swell swelled swollen|swim swam swum|swing swung swung|\
take took taken|teach taught taught|tear tore torn|tell told told|think thought thought|\
throw threw thrown|thrust thrust thrust|tread trod trodden|understand understood understood|\
undo undid undone|upset upset upset|wake woke woken|wear wore worn|weave wove woven|weep wept wept|\
win won won|wind wound wound|withdraw withdrew withdrawn|wring wrung wrung|write wrote written|\
bid bid bid|broadcast broadcast broadcast|forsee foresaw foreseen|foretell foretold foretold|\
mislead misled misled|outrun outran outrun|overhear overheard overheard|oversee oversaw overseen|\
overtake overtook overtaken|overthrow overthrew overthrown|partake partook partaken|rebuild rebuilt rebuilt|\
redo redid redone|repay repaid repaid|rethink rethought rethought|rewind rewound rewound|\
rewrite rewrote rewritten|sneak snuck snuck|stave stove stove|strew strewed strewn|swear swore sworn|\
uphold upheld upheld|withhold withheld withheld|withstand withstood withstood|behold beheld beheld|\
beset beset beset|bestride bestrode bestridden|browbeat browbeat browbeaten|dwell dwelt dwelt|\
flee fled fled|forgo forwent forgone|inlay inlaid inlaid|input input input|interweave interwove interwoven|\
lie lay lain|misread misread misread|misspell misspelt misspelt|mow mowed mown|offset offset offset|\
outdo outdid outdone|outgrow outgrew outgrown|override overrode overridden|overrun overran overrun|\
oversleep overslept overslept|plead pled pled|proofread proofread proofread|saw sawed sawn|\
shear sheared shorn|slink slunk slunk|smite smote smitten|sow sowed sown|spoil spoilt spoilt|\
stride strode stridden|sunburn sunburnt sunburnt|thrive throve thriven|tread trod trodden|\
unbind unbound unbound|unwind unwound unwound|wed wed wed|wet wet wet";

fn irregular_map() -> &'static HashMap<&'static str, &'static str> {
    static MAP: OnceLock<HashMap<&'static str, &'static str>> = OnceLock::new();
    MAP.get_or_init(|| {
        let mut m = HashMap::new();
        for entry in IRREGULAR.split('|') {
            let mut parts = entry.split_whitespace();
            let (Some(lemma), Some(past), Some(pp)) = (parts.next(), parts.next(), parts.next()) else {
                continue;
            };
            m.entry(past).or_insert(lemma);
            m.entry(pp).or_insert(lemma);
        }
        m
    })
}

fn is_vowel(c: char) -> bool {
    "aeiou".contains(c)
}

/// Best-effort lemma of a past, participle or gerund form.
pub fn lemma_of_past(form: &str) -> String {
    let form = form.to_lowercase();
    if let Some(l) = irregular_map().get(form.as_str()) {
        return l.to_string();
    }
    let strip = |suffix: &str| form.strip_suffix(suffix).map(str::to_string);
    if let Some(stem) = strip("ied") {
        return format!("{stem}y");
    }
    let stem = strip("ed").or_else(|| strip("ing"));
    let Some(stem) = stem else {
        return form;
    };
    if stem.len() < 2 {
        return form;
    }
    let chars: Vec<char> = stem.chars().collect();
    let n = chars.len();
    if n >= 2 && chars[n - 1] == chars[n - 2] && !is_vowel(chars[n - 1]) && !"lsz".contains(chars[n - 1]) {
        return chars[..n - 1].iter().collect();
    }
    const E_ENDINGS: [&str; 10] = ["at", "iz", "is", "v", "c", "ur", "dg", "g", "uad", "ok"];
    if E_ENDINGS.iter().any(|e| stem.ends_with(e)) && !stem.ends_with("ng") {
        return format!("{stem}e");
    }
    stem
}

/// Simple-present form of `lemma` for the given subject number.
pub fn inflect_present(lemma: &str, number: Number) -> String {
    let lemma = lemma.to_lowercase();
    match (lemma.as_str(), number) {
        ("be", Number::ThirdSingular) => return "is".into(),
        ("be", Number::FirstSingular) => return "am".into(),
        ("be", Number::Other) => return "are".into(),
        ("have", Number::ThirdSingular) => return "has".into(),
        (_, Number::FirstSingular) | (_, Number::Other) => return lemma,
        _ => {}
    }
    let chars: Vec<char> = lemma.chars().collect();
    let n = chars.len();
    if n >= 2 && chars[n - 1] == 'y' && !is_vowel(chars[n - 2]) {
        return format!("{}ies", &lemma[..lemma.len() - 1]);
    }
    if ["s", "x", "z", "ch", "sh", "o"].iter().any(|s| lemma.ends_with(s)) {
        return format!("{lemma}es");
    }
    format!("{lemma}s")
}

pub fn object_case(text: &str) -> Option<&'static str> {
    Some(match text.to_lowercase().as_str() {
        "they" => "them",
        "he" => "him",
        "she" => "her",
        "i" => "me",
        "we" => "us",
        "who" => "whom",
        _ => return None,
    })
}

pub fn subject_case(text: &str) -> Option<&'static str> {
    Some(match text.to_lowercase().as_str() {
        "them" => "they",
        "him" => "he",
        "her" => "she",
        "me" => "I",
        "us" => "we",
        "whom" => "who",
        _ => return None,
    })
}

const MODALS: [&str; 8] = ["can", "could", "may", "might", "must", "should", "would", "ought"];
const TENSE_AUX: [&str; 5] = ["be", "have", "do", "will", "shall"];

fn noun_number(tree: &DepTree, id: TokenId) -> Number {
    let t = tree.token(id);
    let lower = t.text.to_lowercase();
    match lower.as_str() {
        "i" => return Number::FirstSingular,
        "we" | "you" | "they" | "these" | "those" | "both" => return Number::Other,
        _ => {}
    }
    if tree.child_by_dep(id, &[DepLabel::Conj]).is_some() {
        return Number::Other;
    }
    if matches!(t.tag.as_str(), "NNS" | "NNPS") {
        return Number::Other;
    }
    Number::ThirdSingular
}

/// Number of the subject governing `verb`; third singular when absent.
pub fn subject_number(tree: &DepTree, verb: TokenId) -> Number {
    let Some(subj) = tree.child_with(verb, |t| t.dep.is_subject()) else {
        return Number::ThirdSingular;
    };
    if tree.token(subj).dep.as_str() == "expl" {
        if let Some(a) = tree.child_by_dep(verb, &[DepLabel::Attr, DepLabel::Dobj]) {
            return noun_number(tree, a);
        }
        return Number::ThirdSingular;
    }
    if matches!(tree.token(subj).dep, DepLabel::Csubj | DepLabel::Csubjpass) {
        return Number::ThirdSingular;
    }
    noun_number(tree, subj)
}

fn agrees(tag: &str, number: Number) -> bool {
    match tag {
        "VBZ" => number == Number::ThirdSingular,
        "VBP" => number != Number::ThirdSingular,
        _ => false,
    }
}

fn finite_tag(number: Number) -> &'static str {
    if number == Number::ThirdSingular {
        "VBZ"
    } else {
        "VBP"
    }
}

fn lemma_for(tree: &DepTree, id: TokenId) -> String {
    let t = tree.token(id);
    let lower = t.text.to_lowercase();
    if t.lemma.is_empty() || (t.lemma == lower && matches!(t.tag.as_str(), "VBD" | "VBN" | "VBG")) {
        lemma_of_past(&lower)
    } else {
        t.lemma.clone()
    }
}

fn set_finite(tree: &mut DepTree, id: TokenId, number: Number) {
    if agrees(&tree.token(id).tag, number) {
        return;
    }
    let lemma = lemma_for(tree, id);
    let form = inflect_present(&lemma, number);
    let t = tree.token_mut(id);
    t.text = form;
    t.lemma = lemma;
    t.tag = finite_tag(number).to_string();
}

/// Rewrites `verb` to simple present in place. Passive verbs keep their
/// participle and only the passive auxiliary is re-agreed; modal
/// constructions are left alone. Idempotent.
pub fn correct_verb_tense(tree: &mut DepTree, verb: TokenId) {
    if !tree.token(verb).is_verbal() {
        return;
    }
    let number = subject_number(tree, verb);
    let auxes: Vec<TokenId> = tree
        .children(verb)
        .filter(|&c| matches!(tree.token(c).dep, DepLabel::Aux | DepLabel::Auxpass))
        .collect();

    if auxes.iter().any(|&a| MODALS.contains(&tree.token(a).lemma.as_str())) {
        return;
    }

    if let Some(&auxpass) = auxes.iter().find(|&&a| tree.token(a).dep == DepLabel::Auxpass) {
        for &a in &auxes {
            if a != auxpass {
                tree.remove(a);
            }
        }
        set_finite(tree, auxpass, number);
        return;
    }

    let negated = tree.child_by_dep(verb, &[DepLabel::Neg]).is_some();
    if negated && !auxes.is_empty() {
        let keep = auxes[0];
        for &a in &auxes[1..] {
            tree.remove(a);
        }
        if tree.token(keep).lemma == "be" && tree.token(verb).tag != "VBG" {
            set_finite(tree, keep, number);
            return;
        }
        let aux = tree.token_mut(keep);
        aux.lemma = "do".into();
        aux.text = if number == Number::ThirdSingular { "does" } else { "do" }.into();
        aux.tag = finite_tag(number).into();
        let lemma = lemma_for(tree, verb);
        let v = tree.token_mut(verb);
        v.text = lemma.clone();
        v.lemma = lemma;
        v.tag = "VB".into();
        return;
    }

    for &a in &auxes {
        let t = tree.token(a);
        if TENSE_AUX.contains(&t.lemma.as_str()) || t.text.eq_ignore_ascii_case("to") {
            tree.remove(a);
        }
    }
    set_finite(tree, verb, number);
}

#[cfg(test)]
mod tests {
    use super::super::load_parsed;
    use super::*;

    fn tree(rows: &[(&str, &str, &str, &str, &str, u32)]) -> DepTree {
        let mut s = String::new();
        for (i, (form, lemma, pos, tag, dep, head)) in rows.iter().enumerate() {
            s.push_str(&format!("{}\t{form}\t{lemma}\t{pos}\t{tag}\t{dep}\t{head}\t_\t_\t_\n", i + 1));
        }
        load_parsed(&s).unwrap().remove(0)
    }

    fn surface(t: &DepTree) -> String {
        super::super::realize(t, t.root())
    }

    #[test]
    fn progressive_collapses() {
        let mut t = tree(&[
            ("Kevin", "kevin", "PROPN", "NNP", "nsubj", 3),
            ("is", "be", "AUX", "VBZ", "aux", 3),
            ("reading", "read", "VERB", "VBG", "ROOT", 0),
            ("a", "a", "DET", "DT", "det", 5),
            ("book", "book", "NOUN", "NN", "dobj", 3),
        ]);
        correct_verb_tense(&mut t, 3);
        assert_eq!(surface(&t), "Kevin reads a book.");
    }

    #[test]
    fn past_to_present() {
        let mut t = tree(&[
            ("he", "he", "PRON", "PRP", "nsubj", 2),
            ("came", "come", "VERB", "VBD", "ROOT", 0),
        ]);
        correct_verb_tense(&mut t, 2);
        assert_eq!(t.token(2).text, "comes");
        assert_eq!(t.token(2).tag, "VBZ");
    }

    #[test]
    fn plural_be() {
        let mut t = tree(&[
            ("They", "they", "PRON", "PRP", "nsubj", 2),
            ("be", "be", "AUX", "VB", "ROOT", 0),
            ("here", "here", "ADV", "RB", "advmod", 2),
        ]);
        correct_verb_tense(&mut t, 2);
        assert_eq!(t.token(2).text, "are");
    }

    #[test]
    fn agreeing_forms_are_untouched() {
        let mut t = tree(&[
            ("there", "there", "PRON", "EX", "expl", 2),
            ("'s", "be", "AUX", "VBZ", "ROOT", 0),
            ("a", "a", "DET", "DT", "det", 4),
            ("knock", "knock", "NOUN", "NN", "attr", 2),
        ]);
        correct_verb_tense(&mut t, 2);
        assert_eq!(t.token(2).text, "'s");
    }

    #[test]
    fn idempotent() {
        let mut t = tree(&[
            ("Tom", "tom", "PROPN", "NNP", "nsubj", 2),
            ("saw", "see", "VERB", "VBD", "ROOT", 0),
            ("it", "it", "PRON", "PRP", "dobj", 2),
        ]);
        correct_verb_tense(&mut t, 2);
        let once = t.clone();
        correct_verb_tense(&mut t, 2);
        assert_eq!(t, once);
        assert_eq!(surface(&t), "Tom sees it.");
    }

    #[test]
    fn unknown_lemma_falls_back() {
        assert_eq!(lemma_of_past("glorped"), "glorp");
        assert_eq!(lemma_of_past("running"), "run");
        assert_eq!(lemma_of_past("hanging"), "hang");
        assert_eq!(lemma_of_past("illuminated"), "illuminate");
        assert_eq!(lemma_of_past("saw"), "see");
        assert_eq!(lemma_of_past("carried"), "carry");
    }

    #[test]
    fn present_forms() {
        assert_eq!(inflect_present("carry", Number::ThirdSingular), "carries");
        assert_eq!(inflect_present("watch", Number::ThirdSingular), "watches");
        assert_eq!(inflect_present("go", Number::ThirdSingular), "goes");
        assert_eq!(inflect_present("play", Number::ThirdSingular), "plays");
        assert_eq!(inflect_present("have", Number::ThirdSingular), "has");
        assert_eq!(inflect_present("be", Number::FirstSingular), "am");
        assert_eq!(inflect_present("run", Number::Other), "run");
    }
}
