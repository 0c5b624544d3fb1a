use super::*;
use crate::deptree::load_parsed;

/// One token per line: `text lemma POS tag dep head`; ids are line numbers.
pub(crate) fn parse(src: &str) -> DepTree {
    let conll: String = src
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| {
            let f: Vec<&str> = l.split_whitespace().collect();
            assert_eq!(f.len(), 6, "bad fixture line {l:?}");
            format!("{}\t_\t_\t_\n", [&(i + 1).to_string() as &str, f[0], f[1], f[2], f[3], f[4], f[5]].join("\t"))
        })
        .collect();
    load_parsed(&conll).unwrap().remove(0)
}

fn texts(tree: &DepTree, options: &SimplifyOptions) -> Vec<String> {
    simplify(tree, options).unwrap().into_iter().map(|s| s.text).collect()
}

fn all(tree: &DepTree) -> Vec<String> {
    texts(tree, &SimplifyOptions::default())
}

fn rewrite_texts(kind: AnalyzerKind, tree: &DepTree) -> Vec<String> {
    kind.transform(tree)
        .into_iter()
        .map(|mut r| {
            correct_root_tense(&mut r.tree);
            realize(&r.tree, r.tree.root())
        })
        .collect()
}

const LAUGHS: &str = "
    She she PRON PRP nsubj 2
    LAUGHS laugh VERB VBZ ROOT 0
    , , PUNCT , punct 2
    and and CCONJ CC cc 2
    gives give VERB VBZ conj 2
    Kevin kevin PROPN NNP dative 5
    a a DET DT det 8
    kiss kiss NOUN NN dobj 5
    . . PUNCT . punct 2";

#[test]
fn coordinated_verbs_split_with_later_temporal_id() {
    let out = simplify(&parse(LAUGHS), &SimplifyOptions::default()).unwrap();
    let got: Vec<(&str, i32)> = out.iter().map(|s| (s.text.as_str(), s.temporal_id)).collect();
    assert_eq!(got, [("She laughs.", 0), ("She gives Kevin a kiss.", 1)]);
}

#[test]
fn already_simple_passes_through() {
    let t = parse("He he PRON PRP nsubj 2\nruns run VERB VBZ ROOT 0\n. . PUNCT . punct 2");
    assert_eq!(all(&t), ["He runs."]);
    assert!(AnalyzerKind::ALL.iter().all(|a| !a.identify(&t)));
}

#[test]
fn coordinated_subjects_replace_their_sibling() {
    let t = parse(
        "Tom tom PROPN NNP nsubj 4
         and and CCONJ CC cc 1
         Ann ann PROPN NNP conj 1
         run run VERB VBP ROOT 0",
    );
    assert_eq!(all(&t), ["Tom runs.", "Ann runs."]);
}

#[test]
fn shared_object_is_lent_to_first_verb() {
    let t = parse(
        "He he PRON PRP nsubj 2
         opens open VERB VBZ ROOT 0
         and and CCONJ CC cc 2
         closes close VERB VBZ conj 2
         the the DET DT det 6
         door door NOUN NN dobj 4",
    );
    assert_eq!(all(&t), ["He opens the door.", "He closes the door."]);
}

#[test]
fn both_as_determiner_is_dropped() {
    let t = parse(
        "Both both DET DT det 2
         boys boy NOUN NNS nsubj 3
         run run VERB VBP ROOT 0
         home home ADV RB advmod 3",
    );
    assert!(AnalyzerKind::Preconj.identify(&t));
    assert_eq!(rewrite_texts(AnalyzerKind::Preconj, &t), ["Boys run home."]);
}

#[test]
fn plural_appositive_uses_are() {
    let t = parse(
        "The the DET DT det 2
         twins twin NOUN NNS nsubj 7
         , , PUNCT , punct 2
         two two NUM CD nummod 5
         doctors doctor NOUN NNS appos 2
         , , PUNCT , punct 2
         wait wait VERB VBP ROOT 0
         . . PUNCT . punct 7",
    );
    assert_eq!(
        rewrite_texts(AnalyzerKind::Appositive, &t),
        ["The twins wait.", "The twins are two doctors."]
    );
}

#[test]
fn after_clause_happens_first() {
    // He laughs after he jumps into the water.
    let t = parse(
        "He he PRON PRP nsubj 2
         laughs laugh VERB VBZ ROOT 0
         after after ADP IN mark 5
         he he PRON PRP nsubj 5
         jumps jump VERB VBZ advcl 2
         into into ADP IN prep 5
         the the DET DT det 8
         water water NOUN NN pobj 6
         . . PUNCT . punct 2",
    );
    let out = simplify(&t, &SimplifyOptions::default()).unwrap();
    let got: Vec<(&str, i32)> = out.iter().map(|s| (s.text.as_str(), s.temporal_id)).collect();
    assert_eq!(got, [("He jumps into the water.", -1), ("He laughs.", 0)]);
}

#[test]
fn advcl_with_own_subject_gets_no_extra_one() {
    let t = parse(
        "Jim jim PROPN NNP nsubj 2
         waits wait VERB VBZ ROOT 0
         while while SCONJ IN mark 5
         Ann ann PROPN NNP nsubj 5
         sleeps sleep VERB VBZ advcl 2",
    );
    assert_eq!(rewrite_texts(AnalyzerKind::Advcl, &t), ["Jim waits.", "Ann sleeps."]);
}

#[test]
fn says_that_keeps_only_the_content() {
    let t = parse(
        "He he PRON PRP nsubj 2
         says say VERB VBZ ROOT 0
         that that SCONJ IN mark 5
         she she PRON PRP nsubj 5
         left leave VERB VBD ccomp 2",
    );
    assert_eq!(rewrite_texts(AnalyzerKind::Ccomp, &t), ["She leaves.", "He says."]);
    assert_eq!(all(&t), ["She leaves."]);
}

#[test]
fn agentless_passive_gets_somebody() {
    let t = parse(
        "The the DET DT det 2
         door door NOUN NN nsubjpass 4
         is be AUX VBZ auxpass 4
         closed close VERB VBN ROOT 0
         . . PUNCT . punct 4",
    );
    assert_eq!(all(&t), ["Somebody closes the door."]);
}

#[test]
fn infinitive_complement_collapses() {
    let t = parse(
        "He he PRON PRP nsubj 2
         wants want VERB VBZ ROOT 0
         to to PART TO aux 4
         leave leave VERB VB xcomp 2
         . . PUNCT . punct 2",
    );
    assert_eq!(rewrite_texts(AnalyzerKind::Xcomp, &t), ["He leaves."]);
}

#[test]
fn participle_with_agent_becomes_passive_clause() {
    // Ann sees a wall painted by Tom.
    let t = parse(
        "Ann ann PROPN NNP nsubj 2
         sees see VERB VBZ ROOT 0
         a a DET DT det 4
         wall wall NOUN NN dobj 2
         painted paint VERB VBN acl 4
         by by ADP IN agent 5
         Tom tom PROPN NNP pobj 6",
    );
    assert_eq!(
        rewrite_texts(AnalyzerKind::Acl, &t),
        ["Ann sees a wall.", "A wall is painted by Tom."]
    );
    assert_eq!(all(&t), ["Ann sees a wall.", "Tom paints a wall."]);
}

#[test]
fn inverted_subject_requires_attr() {
    let t = parse(
        "Running run VERB VBG csubj 2
         is be AUX VBZ ROOT 0
         fun fun ADJ JJ acomp 2",
    );
    assert!(!AnalyzerKind::InvertedCsubj.identify(&t));
}

#[test]
fn filter_rules() {
    let keep = parse("She she PRON PRP nsubj 2\nlaughs laugh VERB VBZ ROOT 0\n. . PUNCT . punct 2");
    let short = parse("Laughs laugh VERB VBZ ROOT 0\n. . PUNCT . punct 1");
    let copula = parse(
        "The the DET DT det 2
         thing thing NOUN NN nsubj 3
         is be AUX VBZ ROOT 0
         . . PUNCT . punct 3",
    );
    assert!(is_informative(&keep));
    assert!(!is_informative(&short));
    assert!(!is_informative(&copula));
    let mk = |t: &DepTree| SimplifiedSentence {
        text: realize(t, t.root()),
        tree: t.clone(),
        temporal_id: 0,
    };
    let kept = filter(vec![mk(&keep), mk(&copula), mk(&keep)]);
    assert_eq!(kept.len(), 1);
}

#[test]
fn analyzer_names_round_trip() {
    for a in AnalyzerKind::ALL {
        assert_eq!(a.name().parse::<AnalyzerKind>().unwrap(), a);
    }
    assert_eq!("Inverted-Csubj".parse::<AnalyzerKind>().unwrap(), AnalyzerKind::InvertedCsubj);
    assert!("nonsense".parse::<AnalyzerKind>().is_err());
}

#[test]
fn budget_is_enforced() {
    let options = SimplifyOptions {
        budget: 2,
        ..Default::default()
    };
    assert_eq!(
        simplify(&parse(LAUGHS), &options),
        Err(SimplifyError::BudgetExceeded { budget: 2 })
    );
}
