use std::path::PathBuf;
use std::process::{Command, Output};

use scriptanim::pipeline::Storyboard;

const BIN: &str = env!("CARGO_BIN_EXE_scriptanim");

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(rel)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn storyboard_args(manifest: &str) -> Vec<String> {
    [
        "storyboard",
        &fixture("e2e/script.txt"),
        "--parses",
        &fixture("e2e/parses.conll"),
        "--manifest",
        manifest,
        "--lexicon",
        &fixture("lexicon/lexicon.json"),
        "--embeddings",
        &fixture("lexicon/toy.vec"),
        "--frames",
        &fixture("e2e/frames.jsonl"),
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn run_owned(args: &[String]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

#[test]
fn storyboard_matches_golden_and_is_repeatable() {
    let args = storyboard_args(&fixture("e2e/manifest.json"));
    let first = run_owned(&args);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let second = run_owned(&args);
    assert_eq!(first.stdout, second.stdout);

    let got: Storyboard = serde_json::from_slice(&first.stdout).unwrap();
    let golden: Storyboard =
        serde_json::from_str(&std::fs::read_to_string(fixture("e2e/storyboard.json")).unwrap()).unwrap();
    assert_eq!(got.scenes, golden.scenes);
    assert_eq!(got.warnings, golden.warnings);
    assert_eq!(got.provenance.input_sha256, golden.provenance.input_sha256);

    let stderr = String::from_utf8(first.stderr).unwrap();
    let warning: serde_json::Value = serde_json::from_str(stderr.lines().next().unwrap()).unwrap();
    assert_eq!(warning["warning"], "unmappable_action");
    assert_eq!(warning["lemma"], "explain");
    assert_eq!(warning["sentence_index"], 0);
}

#[test]
fn actions_are_ordered_in_every_scene() {
    let golden: Storyboard =
        serde_json::from_str(&std::fs::read_to_string(fixture("e2e/storyboard.json")).unwrap()).unwrap();
    for scene in &golden.scenes {
        for w in scene.actions.windows(2) {
            assert!((w[0].start_time, w[0].partial_start_time) <= (w[1].start_time, w[1].partial_start_time));
        }
        assert!(scene.actions.iter().all(|a| !a.owner.is_empty()));
    }
}

#[test]
fn manifest_mismatch_is_a_contract_violation() {
    let dir = tempfile::tempdir().unwrap();
    let mut manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("e2e/manifest.json")).unwrap()).unwrap();
    manifest["entries"][1]["char_span"][0] = serde_json::json!(60);
    let path = dir.path().join("manifest.json");
    std::fs::write(&path, manifest.to_string()).unwrap();
    let out = run_owned(&storyboard_args(path.to_str().unwrap()));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("manifest sentence 1"));

    manifest["entries"].as_array_mut().unwrap().pop();
    std::fs::write(&path, manifest.to_string()).unwrap();
    let out = run_owned(&storyboard_args(path.to_str().unwrap()));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn script_without_descriptions_gives_empty_scenes() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("s.txt");
    std::fs::write(&script, "INT. VOID - DAY\n\n          BOB\n     Hi.\n").unwrap();
    let parses = dir.path().join("p.conll");
    std::fs::write(&parses, "").unwrap();
    let manifest = dir.path().join("m.json");
    std::fs::write(&manifest, r#"{"entries":[]}"#).unwrap();
    let out = run(&[
        "storyboard",
        script.to_str().unwrap(),
        "--parses",
        parses.to_str().unwrap(),
        "--manifest",
        manifest.to_str().unwrap(),
        "--lexicon",
        &fixture("lexicon/lexicon.json"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let board: Storyboard = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(board.scenes.len(), 1);
    assert!(board.scenes[0].actions.is_empty());
    assert!(board.warnings.is_empty());
}

#[test]
fn segment_writes_blocks_and_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    let out = run(&["segment", &fixture("e2e/script.txt"), "--manifest", manifest.to_str().unwrap()]);
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[1]["kind"], "Heading");
    assert!(lines[2]["resolved"].as_str().unwrap().contains("Ellie 's head"));
    assert_eq!(
        std::fs::read_to_string(&manifest).unwrap(),
        std::fs::read_to_string(fixture("e2e/manifest.json")).unwrap()
    );
}

#[test]
fn simplify_emits_one_line_per_sentence() {
    let out = run(&["simplify", &fixture("e2e/parses.conll")]);
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let texts: Vec<&str> = lines.iter().map(|l| l["text"].as_str().unwrap()).collect();
    assert_eq!(texts[..2], ["Carl touches Ellie 's shoulder.", "The doctor explains."]);
    assert_eq!(lines.last().unwrap()["temporal_id"], 1);
    assert_eq!(lines.last().unwrap()["tokens"][0], "Alice");

    let only = run(&["simplify", &fixture("e2e/parses.conll"), "--analyzer", "passive"]);
    assert_eq!(String::from_utf8(only.stdout).unwrap().lines().count(), 5);
    let bad = run(&["simplify", &fixture("e2e/parses.conll"), "--analyzer", "nope"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn extract_honours_paper_compat() {
    let args = |compat: bool| {
        let mut a = vec![
            "extract".to_string(),
            fixture("arf/sentences.conll"),
            "--lexicon".into(),
            fixture("lexicon/lexicon.json"),
        ];
        if compat {
            a.push("--paper-compat".into());
        }
        a
    };
    let first = |out: Output| -> serde_json::Value {
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().lines().next().unwrap()).unwrap()
    };
    let plain = first(run_owned(&args(false)));
    let compat = first(run_owned(&args(true)));
    assert_eq!((plain["target"].as_str(), plain["prop"].as_str()), (Some("to Alice"), Some("a red ball")));
    assert_eq!((compat["target"].as_str(), compat["prop"].as_str()), (Some("a red ball"), Some("to Alice")));
}

#[test]
fn eval_reports_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let hyp = dir.path().join("h.jsonl");
    std::fs::write(
        &hyp,
        "{\"source\":\"He laughs after he jumps into the water.\",\"sentences\":[\"He jumps into the water.\",\"He laughs.\"]}\n",
    )
    .unwrap();
    let refs: Vec<String> = (0..3)
        .map(|i| {
            let p = dir.path().join(format!("r{i}.jsonl"));
            std::fs::write(&p, "{\"sentences\":[\"He laughs.\",\"He jumps into the water.\"]}\n").unwrap();
            p.display().to_string()
        })
        .collect();
    let mut args = vec!["eval".to_string(), hyp.display().to_string()];
    args.extend(refs);
    let out = run_owned(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // "he laughs ." has no 4-gram but still contributes 1 to that order's denominator.
    let expected = 100.0 * 0.75f64.powf(0.25);
    assert!((report["bleu"].as_f64().unwrap() - expected).abs() < 1e-9);
    assert!(String::from_utf8_lossy(&out.stderr).contains("SARI"));
}

#[test]
fn stats_counts_descriptions() {
    let out = run(&["stats", &fixture("e2e/script.txt"), "--lexicon", &fixture("lexicon/lexicon.json")]);
    assert!(out.status.success());
    let s: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(s["description_components"], 3);
    assert_eq!(s["sentences"], 5);
}

#[test]
fn usage_errors_exit_with_one() {
    let out = run(&["segment", "--bogus", "x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(run(&["segment", "/no/such/file"]).status.code(), Some(1));
    let v = run(&["--version"]);
    assert!(v.status.success());
    assert!(String::from_utf8_lossy(&v.stdout).contains("schema 1"));
}

#[test]
fn config_file_switches_role_assignment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "roles = \"paper_compat\"\n").unwrap();
    let out = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "extract",
        &fixture("arf/sentences.conll"),
        "--lexicon",
        &fixture("lexicon/lexicon.json"),
    ]);
    let first: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().lines().next().unwrap()).unwrap();
    assert_eq!(first["target"], "a red ball");

    std::fs::write(&cfg, "rolez = 1\n").unwrap();
    let bad = run(&["--config", cfg.to_str().unwrap(), "stats"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn every_corpus_script_builds_a_storyboard() {
    let dir = PathBuf::from(fixture("scripts"));
    let mut scripts: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    scripts.sort();
    assert_eq!(scripts.len(), 10);
    for script in scripts {
        let stem = script.with_extension("");
        let out = run(&[
            "storyboard",
            script.to_str().unwrap(),
            "--parses",
            stem.with_extension("conll").to_str().unwrap(),
            "--manifest",
            &format!("{}.manifest.json", stem.display()),
            "--lexicon",
            &fixture("lexicon/lexicon.json"),
            "--embeddings",
            &fixture("lexicon/toy.vec"),
        ]);
        assert!(out.status.success(), "{}: {}", script.display(), String::from_utf8_lossy(&out.stderr));
        let board: Storyboard = serde_json::from_slice(&out.stdout).unwrap();
        let headings = std::fs::read_to_string(&script)
            .unwrap()
            .lines()
            .filter(|l| ["INT", "EXT", "I/E"].iter().any(|k| l.starts_with(k)))
            .count();
        assert_eq!(board.scenes.len(), headings, "{}", script.display());
        for scene in &board.scenes {
            assert!(scene.actions.windows(2).all(|w| w[0].start_time <= w[1].start_time));
        }
    }
}
