use std::collections::HashMap;
use std::path::Path;

use proptest::prelude::*;
use scriptanim::arf::{
    duration_of, extract, sequence_clock, speed_of, surface_tokens, ArfConfig, FrameIndex, RoleAssignment, WordLists,
};
use scriptanim::deptree::{load_parsed, DepTree};
use scriptanim::lexmap::{EmbeddingTable, Lexicon};
use scriptanim::simplifier::{simplify, SimplifiedSentence, SimplifyOptions};

const DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn trees() -> HashMap<String, DepTree> {
    let content = std::fs::read_to_string(format!("{DIR}/arf/sentences.conll")).unwrap();
    let names = content.lines().filter_map(|l| l.strip_prefix("# ")).map(str::to_string);
    names.zip(load_parsed(&content).unwrap()).collect()
}

fn knowledge() -> (Lexicon, EmbeddingTable) {
    (
        Lexicon::load(Path::new(&format!("{DIR}/lexicon/lexicon.json"))).unwrap(),
        EmbeddingTable::load(Path::new(&format!("{DIR}/lexicon/toy.vec"))).unwrap(),
    )
}

fn frames() -> FrameIndex {
    FrameIndex::parse_jsonl(&std::fs::read_to_string(format!("{DIR}/arf/demo_frames.jsonl")).unwrap()).unwrap()
}

fn single(tree: &DepTree) -> SimplifiedSentence {
    let mut out = simplify(tree, &SimplifyOptions::default()).unwrap();
    assert_eq!(out.len(), 1, "{out:?}");
    out.remove(0)
}

#[test]
fn demo_sentence_both_assignments() {
    let (lex, table) = knowledge();
    let s = single(&trees()["demo"]);
    let fr = frames();
    let frame_list = fr.get(&surface_tokens(&s.tree)).unwrap();
    for use_frames in [true, false] {
        let given = if use_frames { frame_list } else { &[] };
        let corrected = extract(&s, given, &lex, &table, &ArfConfig::default()).unwrap().record;
        assert_eq!(corrected.owner, "James");
        assert_eq!(corrected.action, "throw");
        assert_eq!(corrected.origin_action, "throws");
        assert_eq!(corrected.manner, "gently");
        assert_eq!(corrected.modifier_location, "in the restaurant");
        assert_eq!(corrected.modifier_direction, "from back");
        assert_eq!(corrected.target, "to Alice");
        assert_eq!(corrected.prop, "a red ball");

        let compat = ArfConfig {
            roles: RoleAssignment::PaperCompat,
            ..Default::default()
        };
        let literal = extract(&s, given, &lex, &table, &compat).unwrap().record;
        assert_eq!(literal.target, "a red ball");
        assert_eq!(literal.prop, "to Alice");
        assert_eq!(
            (literal.owner, literal.action, literal.manner),
            (corrected.owner, corrected.action, corrected.manner)
        );
    }
}

#[test]
fn intransitive_leaves_objects_empty() {
    let (lex, table) = knowledge();
    let s = single(&trees()["intransitive"]);
    let r = extract(&s, &[], &lex, &table, &ArfConfig::default()).unwrap();
    assert_eq!((r.record.owner.as_str(), r.record.action.as_str()), ("She", "laugh"));
    assert!(r.record.target.is_empty() && r.record.prop.is_empty());
    assert!(r.warnings.is_empty());
}

#[test]
fn running_is_short_and_moves() {
    let (lex, table) = knowledge();
    let s = single(&trees()["run_around"]);
    let r = extract(&s, &[], &lex, &table, &ArfConfig::default()).unwrap().record;
    assert!(r.translation);
    assert!(!r.rotation);
    assert_eq!(r.duration, 1.0);
}

#[test]
fn frames_and_dependencies_agree_on_owner_and_action() {
    let (lex, table) = knowledge();
    let fr = frames();
    let mut compared = 0;
    for tree in trees().values() {
        for s in simplify(tree, &SimplifyOptions::default()).unwrap() {
            let Some(f) = fr.get(&surface_tokens(&s.tree)) else { continue };
            let a = extract(&s, f, &lex, &table, &ArfConfig::default()).unwrap().record;
            let b = extract(&s, &[], &lex, &table, &ArfConfig::default()).unwrap().record;
            assert_eq!((&a.owner, &a.action), (&b.owner, &b.action), "{}", s.text);
            compared += 1;
        }
    }
    assert_eq!(compared, 3);
}

#[test]
fn jumping_is_scheduled_before_laughing() {
    let (lex, table) = knowledge();
    let out = simplify(&trees()["laughs_after_jumping"], &SimplifyOptions::default()).unwrap();
    let mut records: Vec<_> = out
        .iter()
        .map(|s| extract(s, &[], &lex, &table, &ArfConfig::default()).unwrap().record)
        .collect();
    records.reverse();
    sequence_clock(&mut records, 0.0);
    let jump = records.iter().find(|r| r.action == "jump").unwrap();
    let laugh = records.iter().find(|r| r.action == "laugh").unwrap();
    assert!(jump.partial_start_time < laugh.partial_start_time);
    assert!(jump.start_time + jump.duration <= laugh.start_time);
}

#[test]
fn unknown_verb_warns() {
    let (lex, table) = knowledge();
    let mut tree = trees()["intransitive"].clone();
    tree.token_mut(2).lemma = "zorble".into();
    tree.token_mut(2).text = "zorbles".into();
    let s = single(&tree);
    let r = extract(&s, &[], &lex, &table, &ArfConfig::default()).unwrap();
    assert_eq!(r.record.action, "zorble");
    assert_eq!(r.warnings[0].warning, "unmappable_action");
    assert_eq!(r.warnings[0].lemma.as_deref(), Some("zorble"));
}

const VOCAB: [&str; 14] = [
    "run", "fast", "slowly", "angrily", "carefully", "walk", "door", "she", "the", "opens", "gently", "quickly",
    "sits", "gradually",
];

proptest! {
    #[test]
    fn heuristic_fields_stay_in_domain(ws in prop::collection::vec(prop::sample::select(VOCAB.to_vec()), 0..12)) {
        let lists = WordLists::default();
        let words: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        let d = duration_of(&words, &lists);
        let s = speed_of(&words, &lists);
        prop_assert!([1.0, 2.0, 4.0].contains(&d));
        prop_assert!([0.5, 1.0, 2.0].contains(&s));
        let any = |xs: &[&str]| ws.iter().any(|w| xs.contains(w));
        let expected_d = if any(&["run", "fast", "quickly"]) {
            1.0
        } else if any(&["slowly", "gradually"]) {
            4.0
        } else {
            2.0
        };
        let expected_s = if any(&["angrily", "quickly"]) {
            2.0
        } else if any(&["carefully", "slowly", "gently"]) {
            0.5
        } else {
            1.0
        };
        prop_assert_eq!(d, expected_d);
        prop_assert_eq!(s, expected_s);
    }

    #[test]
    fn clock_never_goes_backwards(steps in prop::collection::vec((-5i32..5, prop::sample::select(vec![1.0, 2.0, 4.0])), 0..20), start in 0.0f64..100.0) {
        let (lex, table) = knowledge();
        let s = single(&trees()["intransitive"]);
        let base = extract(&s, &[], &lex, &table, &ArfConfig::default()).unwrap().record;
        let mut records: Vec<_> = steps
            .iter()
            .map(|&(id, d)| {
                let mut r = base.clone();
                r.partial_start_time = id;
                r.duration = d;
                r
            })
            .collect();
        let end = sequence_clock(&mut records, start);
        for w in records.windows(2) {
            prop_assert!(w[0].partial_start_time <= w[1].partial_start_time);
            prop_assert!(w[0].start_time <= w[1].start_time);
            if w[0].partial_start_time == w[1].partial_start_time {
                prop_assert_eq!(w[0].start_time, w[1].start_time);
            } else {
                prop_assert!(w[1].start_time >= w[0].start_time + w[0].duration);
            }
        }
        prop_assert!(records.iter().all(|r| r.start_time >= start && r.start_time + r.duration <= end));
    }
}
