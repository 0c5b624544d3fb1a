//! End-to-end run from screenplay text and parses to a timed storyboard.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::arf::{
    extract, sequence_clock, surface_tokens, ActionRecord, ArfConfig, ArfError, FrameIndex, RoleAssignment, Warning,
    WordLists,
};
use crate::deptree::{realize, DepTree};
use crate::lexmap::{EmbeddingTable, Lexicon, Thresholds};
use crate::script::{
    character_registry, description_cues, resolve_mentions_with, segment_with, sentence_char_spans, ComponentKind,
    Keywords, PossessiveStyle, ScriptBlock,
};
use crate::simplifier::{simplify, AnalyzerKind, SimplifiedSentence, SimplifyOptions, DEFAULT_BUDGET};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const BUDGET_EXCEEDED: &str = "simplify_budget_exceeded";
pub const NO_VERB: &str = "no_verb";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimplifierConfig {
    pub analyzers: Vec<AnalyzerKind>,
    pub budget: usize,
    pub filter: bool,
}

impl Default for SimplifierConfig {
    fn default() -> Self {
        SimplifierConfig {
            analyzers: AnalyzerKind::ALL.to_vec(),
            budget: DEFAULT_BUDGET,
            filter: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MentionConfig {
    pub possessive: PossessiveStyle,
}

/// Everything tunable, loadable from one TOML or JSON file.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub keywords: Keywords,
    pub simplifier: SimplifierConfig,
    pub mentions: MentionConfig,
    pub thresholds: Thresholds,
    pub word_lists: WordLists,
    pub roles: RoleAssignment,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
}

impl Config {
    /// Reads TOML, or JSON when the file name ends in `.json`.
    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let shown = path.display().to_string();
        let content = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: shown.clone(),
            source,
        })?;
        let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        Self::parse(&content, json).map_err(|message| ConfigError::Parse { path: shown, message })
    }

    pub fn parse(content: &str, json: bool) -> Result<Config, String> {
        if json {
            serde_json::from_str(content).map_err(|e| e.to_string())
        } else {
            toml::from_str(content).map_err(|e| e.to_string())
        }
    }

    pub fn simplify_options(&self) -> SimplifyOptions {
        SimplifyOptions {
            analyzers: self.simplifier.analyzers.clone(),
            budget: self.simplifier.budget,
            filter: self.simplifier.filter,
        }
    }

    pub fn arf(&self) -> ArfConfig {
        ArfConfig {
            word_lists: self.word_lists.clone(),
            thresholds: self.thresholds,
            roles: self.roles,
        }
    }

    /// Hash of the effective configuration, defaults included.
    pub fn sha256(&self) -> String {
        sha256_hex(serde_json::to_string(self).expect("config serializes").as_bytes())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub block_index: usize,
    pub sentence_index: usize,
    /// `[start, end)` in characters of the block's mention-resolved text.
    pub char_span: [usize; 2],
}

/// Maps parse file sentences, in order, to Description sentences.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Manifest {
    /// Free-form producer details, such as model versions.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub header: BTreeMap<String, String>,
    pub entries: Vec<ManifestEntry>,
}

/// A Description block ready for parsing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptionText {
    pub block_index: usize,
    pub scene_index: usize,
    pub cue: String,
    pub resolved: String,
}

/// Description blocks with the nearest cue and pronouns resolved.
pub fn descriptions(blocks: &[ScriptBlock], style: PossessiveStyle) -> Vec<DescriptionText> {
    let registry = character_registry(blocks);
    description_cues(blocks)
        .into_iter()
        .map(|(i, cue)| {
            let text = blocks[i].text.split_whitespace().collect::<Vec<_>>().join(" ");
            DescriptionText {
                block_index: i,
                scene_index: blocks[i].scene_index,
                resolved: resolve_mentions_with(&text, &cue, &registry, style),
                cue,
            }
        })
        .collect()
}

/// A manifest that splits sentences with the built-in splitter.
pub fn draft_manifest(descs: &[DescriptionText]) -> Manifest {
    let mut entries = Vec::new();
    for d in descs {
        for span in sentence_char_spans(&d.resolved) {
            entries.push(ManifestEntry {
                block_index: d.block_index,
                sentence_index: entries.len(),
                char_span: span,
            });
        }
    }
    Manifest {
        header: BTreeMap::new(),
        entries,
    }
}

fn char_slice(s: &str, [a, b]: [usize; 2]) -> Option<&str> {
    let idx = |c: usize| s.char_indices().map(|(i, _)| i).chain([s.len()]).nth(c);
    Some(&s[idx(a)?..idx(b)?])
}

fn letters(s: &str) -> String {
    s.chars().filter(|c| c.is_alphanumeric()).flat_map(char::to_lowercase).collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PipelineError {
    #[error("manifest sentence {sentence_index}: {message}")]
    Manifest { sentence_index: usize, message: String },
    #[error(transparent)]
    Frames(#[from] ArfError),
}

/// Checks that the manifest and parses describe exactly the Description
/// sentences of the script, in order.
pub fn check_manifest(manifest: &Manifest, descs: &[DescriptionText], parses: &[DepTree]) -> Result<(), PipelineError> {
    let bad = |sentence_index: usize, message: String| PipelineError::Manifest { sentence_index, message };
    let by_block: BTreeMap<usize, &DescriptionText> = descs.iter().map(|d| (d.block_index, d)).collect();
    let mut last: Option<(usize, usize)> = None;
    for (i, e) in manifest.entries.iter().enumerate() {
        if e.sentence_index != i {
            return Err(bad(i, format!("sentence_index is {}, expected {i}", e.sentence_index)));
        }
        let Some(d) = by_block.get(&e.block_index) else {
            return Err(bad(i, format!("block {} is not a Description", e.block_index)));
        };
        let [a, b] = e.char_span;
        let Some(text) = char_slice(&d.resolved, e.char_span).filter(|_| a < b) else {
            return Err(bad(i, format!("span [{a}, {b}) does not fit block {}", e.block_index)));
        };
        if let Some((pb, pend)) = last {
            if e.block_index < pb || (e.block_index == pb && a < pend) {
                return Err(bad(i, "entries overlap or are out of order".into()));
            }
        }
        last = Some((e.block_index, b));
        let Some(tree) = parses.get(i) else {
            return Err(bad(i, format!("only {} parses for {} entries", parses.len(), manifest.entries.len())));
        };
        let forms: String = tree.tokens().iter().map(|t| t.text.as_str()).collect();
        if letters(&forms) != letters(text) {
            return Err(bad(i, format!("parse `{}` does not match text `{text}`", realize(tree, tree.root()))));
        }
    }
    if parses.len() > manifest.entries.len() {
        return Err(bad(manifest.entries.len(), format!("{} parses but only {} entries", parses.len(), manifest.entries.len())));
    }
    let covered: std::collections::BTreeSet<usize> = manifest.entries.iter().map(|e| e.block_index).collect();
    if let Some(d) = descs.iter().find(|d| !covered.contains(&d.block_index) && !letters(&d.resolved).is_empty()) {
        let at = manifest.entries.iter().take_while(|e| e.block_index < d.block_index).count();
        return Err(bad(at, format!("Description block {} has no entries", d.block_index)));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub input_sha256: String,
    pub parses_sha256: String,
    pub config_sha256: String,
    pub tool_version: String,
}

impl Provenance {
    pub fn new(script: &[u8], parses: &[u8], config: &Config) -> Self {
        Provenance {
            input_sha256: sha256_hex(script),
            parses_sha256: sha256_hex(parses),
            config_sha256: config.sha256(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub scene_index: usize,
    pub heading_text: String,
    pub actions: Vec<ActionRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Storyboard {
    pub schema_version: u32,
    pub scenes: Vec<Scene>,
    pub warnings: Vec<Warning>,
    pub provenance: Provenance,
}

/// Shared, read-only resources for record extraction.
pub struct Resources<'a> {
    pub lexicon: &'a Lexicon,
    pub table: &'a EmbeddingTable,
    pub frames: Option<&'a FrameIndex>,
    pub config: &'a Config,
}

/// Simplifies and extracts the sentences of one block. Temporal ids are
/// renumbered so each sentence follows the previous one; start times are
/// left at 0 for [`sequence_clock`].
pub fn process_sentences(
    sentences: &[(usize, &DepTree)],
    block_index: Option<usize>,
    res: &Resources<'_>,
) -> (Vec<ActionRecord>, Vec<Warning>) {
    let opts = res.config.simplify_options();
    let arf = res.config.arf();
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    let mut next_id = 0i32;
    for &(sentence_index, tree) in sentences {
        let tag = |mut w: Warning| {
            w.block_index = block_index;
            w.sentence_index = Some(sentence_index);
            w
        };
        let mut simple = simplify(tree, &opts).unwrap_or_else(|_| {
            warnings.push(tag(Warning::new(BUDGET_EXCEEDED)));
            let t = tree.compact();
            vec![SimplifiedSentence {
                text: realize(&t, t.root()),
                tree: t,
                temporal_id: 0,
            }]
        });
        if let (Some(lo), Some(hi)) = (
            simple.iter().map(|s| s.temporal_id).min(),
            simple.iter().map(|s| s.temporal_id).max(),
        ) {
            for s in &mut simple {
                s.temporal_id += next_id - lo;
            }
            next_id += hi - lo + 1;
        }
        for s in &simple {
            let frames = res
                .frames
                .and_then(|f| f.get(&surface_tokens(&s.tree)))
                .unwrap_or(&[]);
            match extract(s, frames, res.lexicon, res.table, &arf) {
                Ok(x) => {
                    warnings.extend(x.warnings.into_iter().map(tag));
                    records.push(x.record);
                }
                Err(_) => warnings.push(tag(Warning::new(NO_VERB))),
            }
        }
    }
    (records, warnings)
}

/// Runs the whole chain on a script whose Description sentences were parsed
/// according to `manifest`.
pub fn run_pipeline(
    script: &str,
    parses: &[DepTree],
    manifest: &Manifest,
    res: &Resources<'_>,
    provenance: Provenance,
) -> Result<Storyboard, PipelineError> {
    let blocks = segment_with(script, &res.config.keywords);
    let descs = descriptions(&blocks, res.config.mentions.possessive);
    check_manifest(manifest, &descs, parses)?;

    let mut per_block: BTreeMap<usize, Vec<(usize, &DepTree)>> = BTreeMap::new();
    for (e, tree) in manifest.entries.iter().zip(parses) {
        per_block.entry(e.block_index).or_default().push((e.sentence_index, tree));
    }
    let processed: Vec<(usize, Vec<ActionRecord>, Vec<Warning>)> = per_block
        .par_iter()
        .map(|(&b, sentences)| {
            let (r, w) = process_sentences(sentences, Some(b), res);
            (b, r, w)
        })
        .collect();

    let mut scenes: Vec<Scene> = Vec::new();
    if let Some(last) = blocks.last() {
        for i in 0..=last.scene_index {
            let heading = blocks
                .iter()
                .find(|b| b.scene_index == i && b.kind == ComponentKind::Heading)
                .map(|b| b.text.clone())
                .unwrap_or_default();
            scenes.push(Scene {
                scene_index: i,
                heading_text: heading,
                actions: Vec::new(),
            });
        }
    }
    let mut warnings = Vec::new();
    let mut clock = 0.0;
    let mut current_scene = None;
    for (b, mut records, w) in processed {
        let scene = blocks[b].scene_index;
        if current_scene != Some(scene) {
            clock = 0.0;
            current_scene = Some(scene);
        }
        clock = sequence_clock(&mut records, clock);
        scenes[scene].actions.extend(records);
        warnings.extend(w);
    }
    for s in &mut scenes {
        s.actions.sort_by(|a, b| {
            a.start_time
                .total_cmp(&b.start_time)
                .then(a.partial_start_time.cmp(&b.partial_start_time))
        });
    }
    Ok(Storyboard {
        schema_version: SCHEMA_VERSION,
        scenes,
        warnings,
        provenance,
    })
}
