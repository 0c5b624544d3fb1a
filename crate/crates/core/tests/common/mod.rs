//! Slow, literal re-derivations shared by the metric suites.

#![allow(dead_code)]

use scriptanim::evalkit::{tokenize, AlignedPair};

pub fn pair(h: &str, refs: &[&str]) -> AlignedPair {
    AlignedPair {
        hypothesis: h.to_string(),
        references: refs.iter().map(|s| s.to_string()).collect(),
        levenshtein_costs: vec![0; refs.len()],
    }
}

/// Edit distance by plain recursion.
pub fn lev_naive(a: &[char], b: &[char]) -> usize {
    match (a.split_first(), b.split_first()) {
        (None, _) => b.len(),
        (_, None) => a.len(),
        (Some((x, ra)), Some((y, rb))) => {
            let sub = lev_naive(ra, rb) + usize::from(x != y);
            sub.min(lev_naive(ra, b) + 1).min(lev_naive(a, rb) + 1)
        }
    }
}

pub fn occurrences(gram: &[String], tokens: &[String]) -> usize {
    (0..tokens.len()).filter(|&i| tokens[i..].starts_with(gram)).count()
}

/// BLEU from first principles: each distinct n-gram counted once by
/// scanning, clipped by its best reference count.
pub fn bleu_naive(pairs: &[AlignedPair], max_n: usize) -> f64 {
    let mut num = vec![0usize; max_n];
    let mut den = vec![0usize; max_n];
    let (mut c, mut r) = (0usize, 0usize);
    for p in pairs {
        let h = tokenize(&p.hypothesis);
        let refs: Vec<Vec<String>> = p.references.iter().map(|x| tokenize(x)).collect();
        for n in 1..=max_n {
            let mut done: Vec<&[String]> = Vec::new();
            for i in 0..h.len().saturating_sub(n - 1) {
                let g = &h[i..i + n];
                if done.contains(&g) {
                    continue;
                }
                done.push(g);
                let best = refs.iter().map(|rf| occurrences(g, rf)).max().unwrap_or(0);
                num[n - 1] += occurrences(g, &h).min(best);
            }
            den[n - 1] += std::cmp::max(1, h.len() as i64 - n as i64 + 1) as usize;
        }
        c += h.len();
        let mut lens: Vec<usize> = refs.iter().map(Vec::len).collect();
        lens.sort();
        r += *lens.iter().min_by_key(|&&l| (l as i64 - h.len() as i64).abs()).unwrap();
    }
    if num.contains(&0) {
        return 0.0;
    }
    let geo: f64 = num
        .iter()
        .zip(&den)
        .map(|(&a, &b)| (a as f64 / b as f64).powf(1.0 / max_n as f64))
        .product();
    let bp = if c > r { 1.0 } else { (1.0 - r as f64 / c as f64).exp() };
    100.0 * bp * geo
}

/// SARI from distinct n-gram lists and scanned counts.
pub fn sari_naive(source: &str, hyp: &str, refs: &[&str]) -> f64 {
    let s = tokenize(source);
    let c = tokenize(hyp);
    let rs: Vec<Vec<String>> = refs.iter().map(|r| tokenize(r)).collect();
    let k = rs.len();
    let distinct = |t: &[String], n: usize| -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = Vec::new();
        for i in 0..t.len().saturating_sub(n - 1) {
            let g = t[i..i + n].to_vec();
            if !out.contains(&g) {
                out.push(g);
            }
        }
        out
    };
    let in_refs = |g: &[String]| rs.iter().map(|r| occurrences(g, r)).sum::<usize>();
    let f1 = |p: f64, r: f64| if p + r > 0.0 { 2.0 * p * r / (p + r) } else { 0.0 };
    let mut total = 0.0;
    for n in 1..=4 {
        let sg = distinct(&s, n);
        let cg = distinct(&c, n);
        let mut rg: Vec<Vec<String>> = Vec::new();
        for r in &rs {
            for g in distinct(r, n) {
                if !rg.contains(&g) {
                    rg.push(g);
                }
            }
        }
        // keep
        let (mut kp, mut kpn, mut kr, mut krn) = (0.0, 0usize, 0.0, 0usize);
        for g in &sg {
            let sc = occurrences(g, &s) * k;
            let cc = occurrences(g, &c) * k;
            let rc = in_refs(g);
            let kept = sc.min(cc);
            let good = kept.min(rc);
            if kept > 0 {
                kpn += 1;
                kp += good as f64 / kept as f64;
            }
            let all = sc.min(rc);
            if all > 0 {
                krn += 1;
                kr += good as f64 / all as f64;
            }
        }
        let keep = f1(
            if kpn > 0 { kp / kpn as f64 } else { 0.0 },
            if krn > 0 { kr / krn as f64 } else { 0.0 },
        );
        // delete
        let (mut dp, mut dpn) = (0.0, 0usize);
        for g in &sg {
            let deleted = (occurrences(g, &s) * k).saturating_sub(occurrences(g, &c) * k);
            if deleted > 0 {
                dpn += 1;
                dp += deleted.saturating_sub(in_refs(g)) as f64 / deleted as f64;
            }
        }
        let del = if dpn > 0 { dp / dpn as f64 } else { 0.0 };
        // add
        let added: Vec<_> = cg.iter().filter(|g| !sg.contains(g)).collect();
        let good = added.iter().filter(|g| rg.contains(g)).count() as f64;
        let addable = rg.iter().filter(|g| !sg.contains(g)).count();
        let add = f1(
            if added.is_empty() { 0.0 } else { good / added.len() as f64 },
            if addable == 0 { 0.0 } else { good / addable as f64 },
        );
        total += keep + del + add;
    }
    total / 12.0
}

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

