use std::collections::{HashMap, HashSet};

use super::{tokenize, EvalError};

type Counts = HashMap<Vec<String>, usize>;

fn grams(tokens: &[String], n: usize) -> Counts {
    let mut c = Counts::new();
    if tokens.len() >= n {
        for w in tokens.windows(n) {
            *c.entry(w.to_vec()).or_insert(0) += 1;
        }
    }
    c
}

fn scaled(c: &Counts, k: usize) -> Counts {
    c.iter().map(|(g, v)| (g.clone(), v * k)).collect()
}

/// Multiset intersection.
fn and(a: &Counts, b: &Counts) -> Counts {
    a.iter()
        .filter_map(|(g, v)| b.get(g).map(|w| (g.clone(), (*v).min(*w))))
        .filter(|(_, v)| *v > 0)
        .collect()
}

/// Multiset difference, dropping non-positive counts.
fn minus(a: &Counts, b: &Counts) -> Counts {
    a.iter()
        .filter_map(|(g, v)| {
            let left = v.saturating_sub(b.get(g).copied().unwrap_or(0));
            (left > 0).then(|| (g.clone(), left))
        })
        .collect()
}

fn f1(p: f64, r: f64) -> f64 {
    if p > 0.0 || r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

/// (keep F1, deletion precision, addition F1) for one n-gram order.
/// Empty denominators count as 0, as in the metric's reference script.
fn order_scores(source: &Counts, candidate: &Counts, references: &[Counts]) -> (f64, f64, f64) {
    let k = references.len();
    let mut all_refs = Counts::new();
    for r in references {
        for (g, v) in r {
            *all_refs.entry(g.clone()).or_insert(0) += v;
        }
    }
    let s_rep = scaled(source, k);
    let c_rep = scaled(candidate, k);

    let keep = and(&s_rep, &c_rep);
    let keep_good = and(&keep, &all_refs);
    let keep_all = and(&s_rep, &all_refs);
    let (mut kp, mut kr) = (0.0, 0.0);
    for (g, v) in &keep {
        let good = keep_good.get(g).copied().unwrap_or(0) as f64;
        kp += good / *v as f64;
        if let Some(a) = keep_all.get(g) {
            kr += good / *a as f64;
        }
    }
    let keep_p = if keep.is_empty() { 0.0 } else { kp / keep.len() as f64 };
    let keep_r = if keep_all.is_empty() { 0.0 } else { kr / keep_all.len() as f64 };

    let del = minus(&s_rep, &c_rep);
    let del_good = minus(&del, &all_refs);
    let dp: f64 = del
        .iter()
        .map(|(g, v)| del_good.get(g).copied().unwrap_or(0) as f64 / *v as f64)
        .sum();
    let del_p = if del.is_empty() { 0.0 } else { dp / del.len() as f64 };

    let s_set: HashSet<&Vec<String>> = source.keys().collect();
    let r_set: HashSet<&Vec<String>> = all_refs.keys().collect();
    let added: HashSet<&Vec<String>> = candidate.keys().filter(|g| !s_set.contains(g)).collect();
    let added_good = added.iter().filter(|g| r_set.contains(*g)).count() as f64;
    let addable = r_set.iter().filter(|g| !s_set.contains(*g)).count();
    let add_p = if added.is_empty() { 0.0 } else { added_good / added.len() as f64 };
    let add_r = if addable == 0 { 0.0 } else { added_good / addable as f64 };

    (f1(keep_p, keep_r), del_p, f1(add_p, add_r))
}

/// SARI of one sentence, in [0, 1], averaged over orders 1 to 4.
pub fn sentence_sari(source: &str, hypothesis: &str, references: &[String]) -> f64 {
    let s = tokenize(source);
    let c = tokenize(hypothesis);
    let rs: Vec<Vec<String>> = references.iter().map(|r| tokenize(r)).collect();
    let (mut keep, mut del, mut add) = (0.0, 0.0, 0.0);
    for n in 1..=4 {
        let refs: Vec<Counts> = rs.iter().map(|r| grams(r, n)).collect();
        let (k, d, a) = order_scores(&grams(&s, n), &grams(&c, n), &refs);
        keep += k;
        del += d;
        add += a;
    }
    (keep + del + add) / 12.0
}

/// Mean sentence SARI, as a percentage.
pub fn sari(sources: &[String], hypotheses: &[String], references: &[Vec<String>]) -> Result<f64, EvalError> {
    if sources.len() != hypotheses.len() || references.len() != hypotheses.len() {
        return Err(EvalError::LengthMismatch {
            what: "sources/references",
            left: sources.len().max(references.len()),
            right: hypotheses.len(),
        });
    }
    if let Some(i) = references.iter().position(Vec::is_empty) {
        return Err(EvalError::NoReference(i));
    }
    if hypotheses.is_empty() {
        return Ok(0.0);
    }
    let total: f64 = sources
        .iter()
        .zip(hypotheses)
        .zip(references)
        .map(|((s, h), r)| sentence_sari(s, h, r))
        .sum();
    Ok(100.0 * total / hypotheses.len() as f64)
}
