//! Python bindings. Structured results cross as plain dicts and tuples; the
//! storyboard crosses as its JSON text, which is what renderers consume.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use scriptanim::arf::FrameIndex;
use scriptanim::deptree::load_parsed;
use scriptanim::evalkit::{self, AlignedPair};
use scriptanim::lexmap::{self, EmbeddingTable, Lexicon, MappingResult, Thresholds};
use scriptanim::pipeline::{self, Config, Manifest, Provenance, Resources};
use scriptanim::script::{self, PossessiveStyle};
use scriptanim::simplifier::{self, AnalyzerKind, SimplifyOptions};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Splits a screenplay into classified blocks.
#[pyfunction]
fn segment<'py>(py: Python<'py>, text: &str) -> PyResult<Vec<Bound<'py, PyDict>>> {
    script::segment(text)
        .into_iter()
        .map(|b| {
            let d = PyDict::new(py);
            d.set_item("kind", b.kind.to_string())?;
            d.set_item("text", b.text)?;
            d.set_item("indent", b.indent)?;
            d.set_item("start_line", b.start_line)?;
            d.set_item("end_line", b.end_line)?;
            d.set_item("scene_index", b.scene_index)?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
#[pyo3(signature = (text, cue, registry, bare = false))]
fn resolve_mentions(text: &str, cue: &str, registry: Vec<String>, bare: bool) -> String {
    let style = if bare { PossessiveStyle::Bare } else { PossessiveStyle::Clitic };
    script::resolve_mentions_with(text, cue, &registry, style)
}

/// Simplifies every sentence of a CoNLL document. Returns, per input
/// sentence, a list of (text, temporal_id).
#[pyfunction]
#[pyo3(signature = (conll, analyzers = None, filter = true, budget = None))]
fn simplify_conll(
    conll: &str,
    analyzers: Option<Vec<String>>,
    filter: bool,
    budget: Option<usize>,
) -> PyResult<Vec<Vec<(String, i32)>>> {
    let mut options = SimplifyOptions {
        filter,
        ..Default::default()
    };
    if let Some(names) = analyzers {
        options.analyzers = names
            .iter()
            .map(|n| n.parse::<AnalyzerKind>())
            .collect::<Result<_, _>>()
            .map_err(value_error)?;
    }
    if let Some(b) = budget {
        options.budget = b;
    }
    let trees = load_parsed(conll).map_err(value_error)?;
    trees
        .iter()
        .map(|t| {
            let out = simplifier::simplify(t, &options).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
            Ok(out.into_iter().map(|s| (s.text, s.temporal_id)).collect())
        })
        .collect()
}

#[pyfunction]
fn levenshtein(a: &str, b: &str) -> usize {
    evalkit::levenshtein(a, b)
}

/// Corpus BLEU in percent; `references[i]` are the references of `hypotheses[i]`.
#[pyfunction]
#[pyo3(signature = (hypotheses, references, max_n = 4))]
fn corpus_bleu(hypotheses: Vec<String>, references: Vec<Vec<String>>, max_n: usize) -> PyResult<f64> {
    if hypotheses.len() != references.len() {
        return Err(value_error("hypotheses and references differ in length"));
    }
    let pairs: Vec<AlignedPair> = hypotheses
        .into_iter()
        .zip(references)
        .map(|(h, r)| AlignedPair {
            hypothesis: h,
            levenshtein_costs: vec![0; r.len()],
            references: r,
        })
        .collect();
    Ok(evalkit::corpus_bleu(&pairs, max_n))
}

#[pyfunction]
fn sari(sources: Vec<String>, hypotheses: Vec<String>, references: Vec<Vec<String>>) -> PyResult<f64> {
    evalkit::sari(&sources, &hypotheses, &references).map_err(value_error)
}

fn mapping(r: MappingResult) -> (Option<String>, f64, String) {
    let method = serde_json::to_value(r.method)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    (r.matched, r.score, method)
}

/// A lexicon plus an embedding table, for mapping words onto the animation
/// and object inventories.
#[pyclass(frozen)]
struct Lexmap {
    lexicon: Lexicon,
    table: EmbeddingTable,
    thresholds: Thresholds,
}

#[pymethods]
impl Lexmap {
    #[new]
    #[pyo3(signature = (lexicon_json, embeddings = None))]
    fn new(lexicon_json: &str, embeddings: Option<&str>) -> PyResult<Self> {
        let lexicon = Lexicon::from_json(lexicon_json).map_err(value_error)?;
        let table = match embeddings {
            Some(text) => EmbeddingTable::parse(text).map_err(value_error)?,
            None => EmbeddingTable::default(),
        };
        Ok(Lexmap {
            lexicon,
            table,
            thresholds: Thresholds::default(),
        })
    }

    fn similarity(&self, a: &str, b: &str) -> f64 {
        lexmap::similarity(a, b, &self.table)
    }

    /// Returns (matched, score, method); `matched` is None when unmapped.
    #[pyo3(signature = (verb, prep = None, object = None))]
    fn map_action(&self, verb: &str, prep: Option<&str>, object: Option<&str>) -> (Option<String>, f64, String) {
        mapping(lexmap::map_action(verb, prep, object, &self.lexicon, &self.table, &self.thresholds))
    }

    fn map_object(&self, noun: &str) -> (Option<String>, f64, String) {
        mapping(lexmap::map_object(noun, &self.lexicon, &self.table, &self.thresholds))
    }
}

/// Full pipeline. All arguments are file contents, not paths. `config` is
/// TOML. Returns the storyboard as JSON text. Input errors raise ValueError,
/// manifest and frame mismatches RuntimeError.
#[pyfunction]
#[pyo3(signature = (script, parses, manifest, lexicon, embeddings = None, frames = None, config = None))]
fn storyboard(
    script: &str,
    parses: &str,
    manifest: &str,
    lexicon: &str,
    embeddings: Option<&str>,
    frames: Option<&str>,
    config: Option<&str>,
) -> PyResult<String> {
    let config = match config {
        Some(c) => Config::parse(c, false).map_err(value_error)?,
        None => Config::default(),
    };
    let trees = load_parsed(parses).map_err(value_error)?;
    let manifest: Manifest = serde_json::from_str(manifest).map_err(value_error)?;
    let lexicon = Lexicon::from_json(lexicon).map_err(value_error)?;
    let table = match embeddings {
        Some(text) => EmbeddingTable::parse(text).map_err(value_error)?,
        None => EmbeddingTable::default(),
    };
    let frames = frames.map(FrameIndex::parse_jsonl).transpose().map_err(value_error)?;
    let res = Resources {
        lexicon: &lexicon,
        table: &table,
        frames: frames.as_ref(),
        config: &config,
    };
    let provenance = Provenance::new(script.as_bytes(), parses.as_bytes(), &config);
    let board = pipeline::run_pipeline(script, &trees, &manifest, &res, provenance)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    serde_json::to_string_pretty(&board).map_err(value_error)
}

#[pymodule]
fn scriptanim_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(segment, m)?)?;
    m.add_function(wrap_pyfunction!(resolve_mentions, m)?)?;
    m.add_function(wrap_pyfunction!(simplify_conll, m)?)?;
    m.add_function(wrap_pyfunction!(levenshtein, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_bleu, m)?)?;
    m.add_function(wrap_pyfunction!(sari, m)?)?;
    m.add_function(wrap_pyfunction!(storyboard, m)?)?;
    m.add_class::<Lexmap>()?;
    Ok(())
}
