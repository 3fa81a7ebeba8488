use std::collections::BTreeMap;

use super::{
    ExcValue, ARGUMENT_NULL_FAILURE, ARGUMENT_NULL_TEMPLATE, RETURN_NULL_FAILURE,
    RETURN_NULL_TEMPLATE,
};

/// Key to template map. Templates use `{i}` placeholders, which may repeat
/// or skip indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MessageCatalog {
    entries: BTreeMap<String, String>,
}

impl MessageCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// The templates of the null-contract failures.
    pub fn builtin() -> Self {
        let mut c = Self::new();
        c.insert(ARGUMENT_NULL_FAILURE, ARGUMENT_NULL_TEMPLATE);
        c.insert(RETURN_NULL_FAILURE, RETURN_NULL_TEMPLATE);
        c
    }

    pub fn insert(
        &mut self,
        key: impl Into<String>,
        template: impl Into<String>,
    ) -> Option<String> {
        self.entries.insert(key.into(), template.into())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn extend(&mut self, other: MessageCatalog) {
        self.entries.extend(other.entries);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl<K: Into<String>, V: Into<String>> FromIterator<(K, V)> for MessageCatalog {
    fn from_iter<I: IntoIterator<Item = (K, V)>>(iter: I) -> Self {
        Self {
            entries: iter
                .into_iter()
                .map(|(k, v)| (k.into(), v.into()))
                .collect(),
        }
    }
}

/// Splits a template into literal text and placeholder indices. Braces that
/// do not form `{digits}` are literal text.
enum Piece<'a> {
    Text(&'a str),
    Slot(usize, &'a str),
}

fn pieces(template: &str) -> Vec<Piece<'_>> {
    let mut out = Vec::new();
    let bytes = template.as_bytes();
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'{' {
            let digits = bytes[i + 1..]
                .iter()
                .take_while(|b| b.is_ascii_digit())
                .count();
            let close = i + 1 + digits;
            if digits > 0 && bytes.get(close) == Some(&b'}') {
                if let Ok(index) = template[i + 1..close].parse::<usize>() {
                    if start < i {
                        out.push(Piece::Text(&template[start..i]));
                    }
                    out.push(Piece::Slot(index, &template[i..=close]));
                    i = close + 1;
                    start = i;
                    continue;
                }
            }
        }
        i += 1;
    }
    if start < template.len() {
        out.push(Piece::Text(&template[start..]));
    }
    out
}

/// Placeholder indices in order of appearance, repeats included.
pub fn placeholder_indices(template: &str) -> Vec<usize> {
    pieces(template)
        .into_iter()
        .filter_map(|p| match p {
            Piece::Slot(i, _) => Some(i),
            Piece::Text(_) => None,
        })
        .collect()
}

/// One more than the largest placeholder index, or 0 without placeholders.
pub fn required_arity(template: &str) -> usize {
    placeholder_indices(template)
        .into_iter()
        .max()
        .map_or(0, |m| m + 1)
}

pub fn render_message(catalog: &MessageCatalog, e: &ExcValue) -> String {
    match catalog.get(&e.key) {
        Some(template) => {
            let mut out = String::with_capacity(template.len());
            for piece in pieces(template) {
                match piece {
                    Piece::Text(t) => out.push_str(t),
                    Piece::Slot(i, raw) => {
                        out.push_str(e.params.get(i).map_or(raw, String::as_str))
                    }
                }
            }
            out
        }
        None => format!("{}[{}]", e.key, e.params.join(", ")),
    }
}

/// One line per chain element, outermost first, causes prefixed with
/// `Caused by: `. No trailing newline.
pub fn render_chain(catalog: &MessageCatalog, e: &ExcValue) -> String {
    let mut out = String::new();
    for (i, element) in e.chain().enumerate() {
        if i > 0 {
            out.push_str("\nCaused by: ");
        }
        out.push_str(&render_message(catalog, element));
    }
    out
}
