//! Ten-column, tab-separated interchange format.
//!
//! One token per line: `id form lemma coarse_pos fine_tag dep head misc _ _`,
//! with a blank line after each sentence. Lines starting with `#` are comments.

use super::{DepLabel, DepToken, DepTree, Pos, TreeError};

const COLUMNS: usize = 10;

pub fn load_parsed(content: &str) -> Result<Vec<DepTree>, TreeError> {
    let mut trees = Vec::new();
    let mut tokens: Vec<DepToken> = Vec::new();
    let mut start_line = 1;

    for (idx, raw) in content.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if !tokens.is_empty() {
                trees.push(DepTree::from_tokens_at(std::mem::take(&mut tokens), start_line)?);
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        if tokens.is_empty() {
            start_line = line_no;
        }
        tokens.push(parse_line(line, line_no)?);
    }
    if !tokens.is_empty() {
        trees.push(DepTree::from_tokens_at(tokens, start_line)?);
    }
    Ok(trees)
}

fn parse_line(line: &str, line_no: usize) -> Result<DepToken, TreeError> {
    let cols: Vec<&str> = line.split('\t').collect();
    let bad = |column: usize, message: String| TreeError::Malformed {
        line: line_no,
        column,
        message,
    };
    if cols.len() < 7 {
        return Err(bad(
            cols.len() + 1,
            format!("expected {COLUMNS} tab-separated columns, found {}", cols.len()),
        ));
    }
    if cols.len() > COLUMNS {
        return Err(bad(COLUMNS + 1, format!("expected {COLUMNS} columns, found {}", cols.len())));
    }
    let id: u32 = cols[0]
        .parse()
        .map_err(|_| bad(1, format!("token id `{}` is not a positive integer", cols[0])))?;
    if id == 0 {
        return Err(bad(1, "token ids start at 1".into()));
    }
    let form = cols[1];
    if form.is_empty() || form == "_" && cols[2] == "_" {
        return Err(bad(2, "empty surface form".into()));
    }
    let lemma = match cols[2] {
        "_" | "" => form.to_lowercase(),
        l => l.to_lowercase(),
    };
    let pos: Pos = cols[3].parse().unwrap();
    let tag = cols[4].to_string();
    if cols[5].is_empty() {
        return Err(bad(6, "empty dependency label".into()));
    }
    let dep: DepLabel = cols[5].parse().unwrap();
    let head: u32 = cols[6]
        .parse()
        .map_err(|_| bad(7, format!("head `{}` is not an integer", cols[6])))?;
    let misc = match cols.get(7) {
        Some(&"_") | Some(&"") | None => String::new(),
        Some(m) => m.to_string(),
    };
    Ok(DepToken {
        id,
        text: form.to_string(),
        lemma,
        pos,
        tag,
        dep,
        head,
        misc,
    })
}

/// Serializes trees; detached material is dropped and ids are compacted.
pub fn write_parsed(trees: &[DepTree]) -> String {
    let mut out = String::new();
    for tree in trees {
        let tree = tree.compact();
        for t in tree.tokens() {
            let misc = if t.misc.is_empty() { "_" } else { &t.misc };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t_\t_\n",
                t.id, t.text, t.lemma, t.pos, t.tag, t.dep, t.head, misc
            ));
        }
        out.push('\n');
    }
    out
}
