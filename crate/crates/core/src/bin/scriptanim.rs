use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use scriptanim::arf::{sequence_clock, surface_tokens, ActionRecord, FrameIndex, RoleAssignment, Warning};
use scriptanim::deptree::{load_parsed, DepTree};
use scriptanim::evalkit::{boolean_field_prf, evaluate, per_field_bleu1, EvalBlock, MetricReport};
use scriptanim::lexmap::{EmbeddingTable, Lexicon};
use scriptanim::pipeline::{
    descriptions, draft_manifest, run_pipeline, Config, Manifest, Provenance, Resources, SCHEMA_VERSION, TOOL_VERSION,
};
use scriptanim::script::{corpus_stats, segment_with, ScriptBlock};
use scriptanim::simplifier::{simplify, AnalyzerKind};

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (storyboard schema 1)");

#[derive(Parser)]
#[command(name = "scriptanim", version = VERSION, about = "Screenplay text to timed action records")]
struct Cli {
    /// TOML or JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write data here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Knowledge {
    /// Animation and object inventory (JSON).
    #[arg(long)]
    lexicon: PathBuf,
    /// Word vectors in text format.
    #[arg(long)]
    embeddings: Option<PathBuf>,
    /// Semantic role frames (JSON Lines).
    #[arg(long)]
    frames: Option<PathBuf>,
    /// Patient as target and recipient as prop.
    #[arg(long)]
    paper_compat: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify screenplay paragraphs; one JSON block per line.
    Segment {
        script: PathBuf,
        /// Also write a manifest using the built-in sentence splitter.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Split parsed sentences into simple ones.
    Simplify {
        parses: PathBuf,
        /// Restrict to these analyzers (repeatable).
        #[arg(long = "analyzer")]
        analyzers: Vec<String>,
        /// Keep fragments and duplicates.
        #[arg(long)]
        no_filter: bool,
    },
    /// Action records for parsed sentences, read as one Description.
    Extract {
        parses: PathBuf,
        #[command(flatten)]
        knowledge: Knowledge,
    },
    /// Full run to a storyboard.
    Storyboard {
        script: PathBuf,
        #[arg(long)]
        parses: PathBuf,
        #[arg(long)]
        manifest: PathBuf,
        #[command(flatten)]
        knowledge: Knowledge,
    },
    /// Score hypotheses against three annotators.
    Eval {
        hypotheses: PathBuf,
        #[arg(num_args = 1..)]
        references: Vec<PathBuf>,
        /// System action records, aligned line by line with --arf-gold.
        #[arg(long, requires = "arf_gold")]
        arf_system: Option<PathBuf>,
        #[arg(long, requires = "arf_system")]
        arf_gold: Option<PathBuf>,
    },
    /// Corpus counts over one or more scripts.
    Stats {
        scripts: Vec<PathBuf>,
        /// Count action verbs from this inventory (animations and synonyms).
        #[arg(long)]
        lexicon: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Contract(String),
}

type Run<T> = Result<T, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_bytes(path: &Path) -> Run<Vec<u8>> {
    fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parses(path: &Path) -> Run<Vec<DepTree>> {
    load_parsed(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn jsonl<T: serde::de::DeserializeOwned>(path: &Path) -> Run<Vec<T>> {
    read(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Failure::Input(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}

struct Out {
    buf: Vec<u8>,
}

impl Out {
    fn line<T: Serialize>(&mut self, value: &T) {
        serde_json::to_writer(&mut self.buf, value).expect("in-memory write");
        self.buf.push(b'\n');
    }

    fn pretty<T: Serialize>(&mut self, value: &T) {
        serde_json::to_writer_pretty(&mut self.buf, value).expect("in-memory write");
        self.buf.push(b'\n');
    }
}

fn warn(w: &Warning) {
    eprintln!("{}", serde_json::to_string(w).expect("warnings serialize"));
}

fn load_knowledge(k: &Knowledge) -> Run<(Lexicon, EmbeddingTable, Option<FrameIndex>)> {
    let lexicon = Lexicon::load(&k.lexicon).map_err(input)?;
    let table = match &k.embeddings {
        Some(p) => EmbeddingTable::load(p).map_err(input)?,
        None => EmbeddingTable::default(),
    };
    let frames = match &k.frames {
        Some(p) => Some(FrameIndex::parse_jsonl(&read(p)?).map_err(input)?),
        None => None,
    };
    Ok((lexicon, table, frames))
}

#[derive(Serialize)]
struct BlockLine<'a> {
    #[serde(flatten)]
    block: &'a ScriptBlock,
    block_index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    cue: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    resolved: Option<&'a str>,
}

#[derive(Serialize)]
struct SimplifiedLine {
    sentence_index: usize,
    text: String,
    temporal_id: i32,
    tokens: Vec<String>,
}

fn run(cli: Cli, out: &mut Out) -> Run<()> {
    let mut config = match &cli.config {
        Some(p) => Config::load(p).map_err(input)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Segment { script, manifest } => {
            let blocks = segment_with(&read(&script)?, &config.keywords);
            let descs = descriptions(&blocks, config.mentions.possessive);
            for (i, b) in blocks.iter().enumerate() {
                let d = descs.iter().find(|d| d.block_index == i);
                out.line(&BlockLine {
                    block: b,
                    block_index: i,
                    cue: d.map(|d| d.cue.as_str()),
                    resolved: d.map(|d| d.resolved.as_str()),
                });
            }
            if let Some(path) = manifest {
                let text = serde_json::to_string_pretty(&draft_manifest(&descs)).expect("manifest serializes");
                fs::write(&path, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
        }
        Command::Simplify {
            parses: path,
            analyzers,
            no_filter,
        } => {
            if !analyzers.is_empty() {
                config.simplifier.analyzers = analyzers
                    .iter()
                    .map(|a| a.parse::<AnalyzerKind>())
                    .collect::<Result<_, _>>()
                    .map_err(input)?;
            }
            if no_filter {
                config.simplifier.filter = false;
            }
            let opts = config.simplify_options();
            for (i, tree) in parses(&path)?.iter().enumerate() {
                let simple = simplify(tree, &opts).map_err(|e| Failure::Contract(format!("sentence {i}: {e}")))?;
                for s in simple {
                    out.line(&SimplifiedLine {
                        sentence_index: i,
                        tokens: surface_tokens(&s.tree),
                        text: s.text,
                        temporal_id: s.temporal_id,
                    });
                }
            }
        }
        Command::Extract { parses: path, knowledge } => {
            if knowledge.paper_compat {
                config.roles = RoleAssignment::PaperCompat;
            }
            let trees = parses(&path)?;
            let (lexicon, table, frames) = load_knowledge(&knowledge)?;
            let res = Resources {
                lexicon: &lexicon,
                table: &table,
                frames: frames.as_ref(),
                config: &config,
            };
            let sentences: Vec<(usize, &DepTree)> = trees.iter().enumerate().collect();
            let (mut records, warnings) = scriptanim::pipeline::process_sentences(&sentences, None, &res);
            sequence_clock(&mut records, 0.0);
            warnings.iter().for_each(warn);
            for r in &records {
                out.line(r);
            }
        }
        Command::Storyboard {
            script,
            parses: parses_path,
            manifest,
            knowledge,
        } => {
            if knowledge.paper_compat {
                config.roles = RoleAssignment::PaperCompat;
            }
            let script_bytes = read_bytes(&script)?;
            let script_text = String::from_utf8(script_bytes.clone()).map_err(|e| Failure::Input(format!("{}: {e}", script.display())))?;
            let parse_bytes = read_bytes(&parses_path)?;
            let trees = parses(&parses_path)?;
            let manifest: Manifest = serde_json::from_str(&read(&manifest)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", manifest.display())))?;
            let (lexicon, table, frames) = load_knowledge(&knowledge)?;
            let res = Resources {
                lexicon: &lexicon,
                table: &table,
                frames: frames.as_ref(),
                config: &config,
            };
            let provenance = Provenance::new(&script_bytes, &parse_bytes, &config);
            let board = run_pipeline(&script_text, &trees, &manifest, &res, provenance)
                .map_err(|e| Failure::Contract(e.to_string()))?;
            board.warnings.iter().for_each(warn);
            out.pretty(&board);
        }
        Command::Eval {
            hypotheses,
            references,
            arf_system,
            arf_gold,
        } => {
            let hyps: Vec<EvalBlock> = jsonl(&hypotheses)?;
            let refs: Vec<Vec<EvalBlock>> = references.iter().map(|p| jsonl(p)).collect::<Run<_>>()?;
            let mut report: MetricReport = evaluate(&hyps, &refs).map_err(input)?;
            if let (Some(s), Some(g)) = (arf_system, arf_gold) {
                let system: Vec<ActionRecord> = jsonl(&s)?;
                let gold: Vec<ActionRecord> = jsonl(&g)?;
                report.per_field_bleu1 = per_field_bleu1(&system, &gold).map_err(input)?;
                report.boolean_field_prf = boolean_field_prf(&system, &gold).map_err(input)?;
            }
            eprintln!("{}", table(&report));
            out.pretty(&report);
        }
        Command::Stats { scripts, lexicon } => {
            let verbs: HashSet<String> = match lexicon {
                Some(p) => {
                    let lex = Lexicon::load(&p).map_err(input)?;
                    lex.animations.iter().chain(lex.synonyms.keys()).cloned().collect()
                }
                None => HashSet::new(),
            };
            let mut blocks = Vec::new();
            for s in &scripts {
                blocks.extend(segment_with(&read(s)?, &config.keywords));
            }
            out.pretty(&corpus_stats(&blocks, &verbs));
        }
    }
    Ok(())
}

fn table(r: &MetricReport) -> String {
    let mut rows = vec![format!("{:<22}{:>8.2}", "BLEU", r.bleu), format!("{:<22}{:>8.2}", "SARI", r.sari)];
    for (f, v) in &r.per_field_bleu1 {
        rows.push(format!("{:<22}{:>8.2}", format!("BLEU-1 {f}"), v));
    }
    for (f, p) in &r.boolean_field_prf {
        rows.push(format!(
            "{:<22}{:>8.2}{:>8.2}{:>8.2}",
            format!("P/R/F1 {f}"),
            p.precision,
            p.recall,
            p.f1
        ));
    }
    rows.join("\n")
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    log::debug!("scriptanim {TOOL_VERSION}, storyboard schema {SCHEMA_VERSION}");
    let output = cli.output.clone();
    let mut out = Out { buf: Vec::new() };
    match run(cli, &mut out) {
        Ok(()) => {
            let written = match output {
                Some(p) => fs::write(&p, &out.buf).map_err(|e| format!("{}: {e}", p.display())),
                None => std::io::stdout().write_all(&out.buf).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Contract(m)) => {
            eprintln!("contract violation: {m}");
            ExitCode::from(2)
        }
    }
}
