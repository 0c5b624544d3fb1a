use super::{DepTree, Pos, TokenId};

const TERMINALS: [&str; 3] = [".", "!", "?"];
const OPENERS: [&str; 5] = ["(", "[", "{", "``", "\u{201c}"];

fn is_punct_text(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_punctuation() || "\u{201c}\u{201d}\u{2018}\u{2019}\u{2026}\u{2014}\u{2013}".contains(c)) && !s.starts_with('\'')
}

/// Surface tokens of the subtree under `root` after casing normalization:
/// proper nouns and "I" keep their case, everything else is lowercased.
/// The first token is not capitalized here.
pub fn realize_tokens(tree: &DepTree, root: TokenId) -> Vec<String> {
    tree.subtree(root)
        .into_iter()
        .map(|id| {
            let t = tree.token(id);
            if t.pos == Pos::Propn || t.text == "I" {
                t.text.clone()
            } else {
                t.text.to_lowercase()
            }
        })
        .collect()
}

/// In-order traversal of the subtree under `root` as a sentence string.
///
/// Punctuation attaches to the preceding word, dangling punctuation at either
/// end is dropped, the first letter is capitalized and a terminal period is
/// added unless the subtree already ends in `.`, `!` or `?`.
pub fn realize(tree: &DepTree, root: TokenId) -> String {
    let order = tree.subtree(root);
    let mut items: Vec<(String, bool)> = order
        .iter()
        .zip(realize_tokens(tree, root))
        .map(|(&id, text)| {
            let punct = tree.token(id).pos == Pos::Punct || is_punct_text(&text);
            (text, punct)
        })
        .collect();

    while items.first().is_some_and(|(t, p)| *p && !OPENERS.contains(&t.as_str())) {
        items.remove(0);
    }
    let mut terminal: Option<String> = None;
    while items.last().is_some_and(|(_, p)| *p) {
        let (t, _) = items.pop().unwrap();
        if terminal.is_none() && TERMINALS.contains(&t.as_str()) {
            terminal = Some(t);
        }
    }
    if items.is_empty() {
        return String::new();
    }

    let mut out = String::new();
    let mut prev_open = false;
    let mut prev_punct = false;
    for (text, punct) in &items {
        let open = OPENERS.contains(&text.as_str());
        if *punct && !open {
            if prev_punct && !prev_open && matches!(text.as_str(), "," | ";" | ":") {
                continue;
            }
            out.push_str(text);
        } else {
            if !out.is_empty() && !prev_open {
                out.push(' ');
            }
            out.push_str(text);
        }
        prev_open = open;
        prev_punct = *punct;
    }
    out.push_str(terminal.as_deref().unwrap_or("."));
    capitalize_first(&out)
}

fn capitalize_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Key used to recognize repeated sentences: lowercase, single spaces, no
/// terminal punctuation.
pub fn normalize_for_hash(text: &str) -> String {
    let lowered = text.to_lowercase();
    let collapsed = lowered.split_whitespace().collect::<Vec<_>>().join(" ");
    collapsed
        .trim_end_matches(|c: char| TERMINALS.iter().any(|t| t.starts_with(c)) || c.is_whitespace())
        .to_string()
}
