//! Maps free verbs and nouns onto the fixed inventory of animations and
//! props, through exact and synonym lookups, vector similarity, compound keys
//! and taxonomy fallbacks.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("embeddings line {line}: {message}")]
    Embedding { line: usize, message: String },
    #[error("lexicon: {0}")]
    Lexicon(String),
}

/// Word vectors, stored unit-normalized so similarity is a dot product.
#[derive(Debug, Clone, Default)]
pub struct EmbeddingTable {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    /// Parses the text format: a `<count> <dim>` header, then one
    /// `word v1 ... vd` line per word.
    pub fn parse(content: &str) -> Result<EmbeddingTable, LexError> {
        let bad = |line: usize, message: String| LexError::Embedding { line, message };
        let mut lines = content.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let Some((_, header)) = lines.next() else {
            return Ok(EmbeddingTable::default());
        };
        let head: Vec<&str> = header.split_whitespace().collect();
        let (count, dim) = match head.as_slice() {
            [c, d] => (
                c.parse::<usize>().map_err(|_| bad(1, format!("bad word count `{c}`")))?,
                d.parse::<usize>().map_err(|_| bad(1, format!("bad dimension `{d}`")))?,
            ),
            _ => return Err(bad(1, "header must be `<count> <dim>`".into())),
        };
        if dim == 0 {
            return Err(bad(1, "dimension must be positive".into()));
        }
        let mut vectors = HashMap::with_capacity(count);
        for (i, line) in lines {
            let line_no = i + 1;
            let mut parts = line.split_whitespace();
            let word = parts.next().unwrap().to_lowercase();
            let values: Vec<f64> = parts
                .map(|p| p.parse::<f64>().map_err(|_| bad(line_no, format!("`{p}` is not a number"))))
                .collect::<Result<_, _>>()?;
            if values.len() != dim {
                return Err(bad(line_no, format!("expected {dim} values, found {}", values.len())));
            }
            let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return Err(bad(line_no, format!("vector for `{word}` has no direction")));
            }
            vectors.insert(word, values.into_iter().map(|v| v / norm).collect());
        }
        if vectors.len() != count {
            return Err(bad(1, format!("header promises {count} words, file has {}", vectors.len())));
        }
        Ok(EmbeddingTable { dim, vectors })
    }

    pub fn load(path: &Path) -> Result<EmbeddingTable, LexError> {
        let content = std::fs::read_to_string(path).map_err(|source| LexError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&content)
    }

    /// Builds a table from raw vectors. Panics on zero vectors or mixed
    /// dimensions; meant for tests and programmatic construction.
    pub fn from_vectors<I, S>(entries: I) -> EmbeddingTable
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        let mut dim = 0;
        let mut vectors = HashMap::new();
        for (w, v) in entries {
            if dim == 0 {
                dim = v.len();
            }
            assert_eq!(v.len(), dim, "mixed dimensions");
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(norm > 0.0, "zero vector");
            vectors.insert(w.into().to_lowercase(), v.into_iter().map(|x| x / norm).collect());
        }
        EmbeddingTable { dim, vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.vectors.contains_key(&word.to_lowercase())
    }
}

/// Cosine similarity; 0 when either word is unknown.
pub fn similarity(w1: &str, w2: &str, table: &EmbeddingTable) -> f64 {
    let (Some(a), Some(b)) = (
        table.vectors.get(&w1.to_lowercase()),
        table.vectors.get(&w2.to_lowercase()),
    ) else {
        return 0.0;
    };
    a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>().clamp(-1.0, 1.0)
}

/// The animation and prop inventory with its word relations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Lexicon {
    pub animations: BTreeSet<String>,
    pub synonyms: BTreeMap<String, String>,
    pub antonyms: BTreeMap<String, BTreeSet<String>>,
    pub hypernyms: BTreeMap<String, Vec<String>>,
    pub holonyms: BTreeMap<String, Vec<String>>,
    pub objects: BTreeSet<String>,
}

impl Lexicon {
    pub fn from_json(content: &str) -> Result<Lexicon, LexError> {
        let raw: Lexicon = serde_json::from_str(content).map_err(|e| LexError::Lexicon(e.to_string()))?;
        raw.normalized()
    }

    pub fn load(path: &Path) -> Result<Lexicon, LexError> {
        let content = std::fs::read_to_string(path).map_err(|source| LexError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&content)
    }

    /// Lowercases entries, makes antonymy symmetric and checks that every
    /// synonym points at an animation.
    pub fn normalized(self) -> Result<Lexicon, LexError> {
        let low = |s: &String| s.trim().to_lowercase();
        let animations: BTreeSet<String> = self.animations.iter().map(low).collect();
        let mut synonyms = BTreeMap::new();
        for (k, v) in &self.synonyms {
            let v = low(v);
            if !animations.contains(&v) {
                return Err(LexError::Lexicon(format!("synonym `{k}` points at `{v}`, which is not an animation")));
            }
            synonyms.insert(low(k), v);
        }
        let mut antonyms: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (k, vs) in &self.antonyms {
            for v in vs {
                antonyms.entry(low(k)).or_default().insert(low(v));
                antonyms.entry(low(v)).or_default().insert(low(k));
            }
        }
        let chains = |m: &BTreeMap<String, Vec<String>>| -> BTreeMap<String, Vec<String>> {
            m.iter().map(|(k, v)| (low(k), v.iter().map(low).collect())).collect()
        };
        Ok(Lexicon {
            animations,
            synonyms,
            antonyms,
            hypernyms: chains(&self.hypernyms),
            holonyms: chains(&self.holonyms),
            objects: self.objects.iter().map(low).collect(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain maps serialize")
    }

    /// Whether `a` and `b` are recorded as opposites.
    pub fn are_antonyms(&self, a: &str, b: &str) -> bool {
        self.antonyms.get(a).is_some_and(|s| s.contains(b))
    }

    /// Number of action words the inventory covers directly.
    pub fn action_vocabulary(&self) -> usize {
        self.animations.len() + self.synonyms.keys().filter(|k| !self.animations.contains(*k)).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    pub action: f64,
    pub object: f64,
    pub emotion: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            action: 0.55,
            object: 0.55,
            emotion: 0.60,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Synonym,
    Similarity,
    VerbPlusPrep,
    VerbPlusObject,
    Hypernym,
    Holonym,
    Unmapped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MappingResult {
    pub query: String,
    pub matched: Option<String>,
    /// Cosine similarity behind the match; 1 for dictionary hits.
    pub score: f64,
    pub method: Method,
}

impl MappingResult {
    fn hit(query: &str, matched: &str, score: f64, method: Method) -> Self {
        MappingResult {
            query: query.to_string(),
            matched: Some(matched.to_string()),
            score,
            method,
        }
    }

    fn miss(query: &str, score: f64) -> Self {
        MappingResult {
            query: query.to_string(),
            matched: None,
            score,
            method: Method::Unmapped,
        }
    }
}

/// Best candidate at or above `threshold`; ties go to the smaller name.
fn nearest<'a>(
    word: &str,
    candidates: impl Iterator<Item = &'a String>,
    table: &EmbeddingTable,
    threshold: f64,
) -> Option<(&'a String, f64)> {
    let mut best: Option<(&String, f64)> = None;
    for c in candidates {
        let s = similarity(word, c, table);
        let better = match best {
            None => true,
            Some((b, bs)) => s > bs || (s == bs && c < b),
        };
        if better {
            best = Some((c, s));
        }
    }
    best.filter(|&(_, s)| s >= threshold)
}

/// Dictionary lookup of a key: the animation itself or its synonym target.
fn lookup<'a>(key: &str, lexicon: &'a Lexicon) -> Option<(&'a String, Method)> {
    if let Some(a) = lexicon.animations.get(key) {
        return Some((a, Method::Exact));
    }
    lexicon.synonyms.get(key).map(|t| (t, Method::Synonym))
}

pub fn map_action(
    verb: &str,
    prep: Option<&str>,
    object: Option<&str>,
    lexicon: &Lexicon,
    table: &EmbeddingTable,
    thresholds: &Thresholds,
) -> MappingResult {
    let verb = verb.trim().to_lowercase();
    let allowed = |c: &String| !lexicon.are_antonyms(&verb, c);

    if let Some((hit, method)) = lookup(&verb, lexicon).filter(|(h, _)| allowed(h)) {
        return MappingResult::hit(&verb, hit, 1.0, method);
    }
    if let Some((hit, s)) = nearest(&verb, lexicon.animations.iter().filter(|c| allowed(c)), table, thresholds.action) {
        return MappingResult::hit(&verb, hit, s, Method::Similarity);
    }

    let compounds = [
        (prep.map(|p| format!("{verb}_{}", p.to_lowercase())), Method::VerbPlusPrep),
        (object.map(|o| format!("{verb}_{}", o.to_lowercase())), Method::VerbPlusObject),
    ];
    for (key, method) in compounds {
        let Some(key) = key else { continue };
        if let Some((hit, _)) = lookup(&key, lexicon).filter(|(h, _)| allowed(h)) {
            return MappingResult::hit(&verb, hit, 1.0, method);
        }
        if let Some((hit, s)) = nearest(&key, lexicon.animations.iter().filter(|c| allowed(c)), table, thresholds.action) {
            return MappingResult::hit(&verb, hit, s, method);
        }
    }

    for h in lexicon.hypernyms.get(&verb).into_iter().flatten() {
        if let Some((hit, _)) = lookup(h, lexicon).filter(|(hit, _)| allowed(hit)) {
            return MappingResult::hit(&verb, hit, similarity(&verb, hit, table), Method::Hypernym);
        }
    }

    let best = lexicon
        .animations
        .iter()
        .map(|a| similarity(&verb, a, table))
        .fold(0.0f64, f64::max);
    MappingResult::miss(&verb, best)
}

pub fn map_object(noun: &str, lexicon: &Lexicon, table: &EmbeddingTable, thresholds: &Thresholds) -> MappingResult {
    let noun = noun.trim().to_lowercase();
    if let Some(hit) = lexicon.objects.get(&noun) {
        return MappingResult::hit(&noun, hit, 1.0, Method::Exact);
    }
    if let Some((hit, s)) = nearest(&noun, lexicon.objects.iter(), table, thresholds.object) {
        return MappingResult::hit(&noun, hit, s, Method::Similarity);
    }
    for h in lexicon.holonyms.get(&noun).into_iter().flatten() {
        if let Some(hit) = lexicon.objects.get(h) {
            return MappingResult::hit(&noun, hit, similarity(&noun, hit, table), Method::Holonym);
        }
    }
    let best = lexicon
        .objects
        .iter()
        .map(|o| similarity(&noun, o, table))
        .fold(0.0f64, f64::max);
    MappingResult::miss(&noun, best)
}
