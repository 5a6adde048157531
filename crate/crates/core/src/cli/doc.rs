use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Section kinds a workspace document may contain.
pub const SECTION_KINDS: &[&str] = &["category", "filter", "model", "product", "sequences", "families", "dn", "shapes", "unique-arrow", "random-filters"];

/// A source position; positions never affect equality.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub kind: String,
    pub name: String,
    pub entries: Vec<Entry>,
    pub span: Span,
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.key == key)
    }
}

/// Named sections of `key = value` entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub sections: Vec<Section>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(span: Span, message: impl Into<String>) -> Self {
        ParseError { line: span.line, column: span.column, message: message.into() }
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c))
}

impl FromStr for Document {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut doc = Document::default();
        let mut names = std::collections::HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            let column = raw.len() - raw.trim_start().len() + 1;
            let span = Span { line, column };
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if let Some(header) = trimmed.strip_prefix('[') {
                let body = header.strip_suffix(']').ok_or_else(|| ParseError::at(span, "unclosed section header"))?;
                let mut words = body.split_whitespace();
                let kind = words.next().ok_or_else(|| ParseError::at(span, "empty section header"))?;
                if !SECTION_KINDS.contains(&kind) {
                    return Err(ParseError::at(Span { line, column: column + 1 }, format!("unknown section kind `{kind}`")));
                }
                let name = words.next().ok_or_else(|| ParseError::at(span, format!("section `{kind}` needs a name")))?;
                if !is_name(name) || words.next().is_some() {
                    return Err(ParseError::at(span, format!("bad section name in `{trimmed}`")));
                }
                if !names.insert(name.to_string()) {
                    return Err(ParseError::at(span, format!("duplicate section name `{name}`")));
                }
                doc.sections.push(Section { kind: kind.into(), name: name.into(), entries: vec![], span });
                continue;
            }
            let section = doc.sections.last_mut().ok_or_else(|| ParseError::at(span, "entry before any section"))?;
            let (key, value) = trimmed.split_once('=').ok_or_else(|| ParseError::at(span, "expected `key = value`"))?;
            let key = key.trim();
            if !is_name(key) {
                return Err(ParseError::at(span, format!("bad key `{key}`")));
            }
            let eq = raw.find('=').unwrap();
            let offset = eq + 2 + (value.len() - value.trim_start().len());
            section.entries.push(Entry { key: key.into(), value: value.trim().into(), span: Span { line, column: offset } });
        }
        Ok(doc)
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "[{} {}]", s.kind, s.name)?;
            for e in &s.entries {
                writeln!(f, "{} = {}", e.key, e.value)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_reported() {
        let e = "[category c]\nbuiltin finset(2)\n".parse::<Document>().unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = "\n  [widget w]".parse::<Document>().unwrap_err();
        assert_eq!((e.line, e.column), (2, 4));
        let e = "x = 1".parse::<Document>().unwrap_err();
        assert_eq!(e.line, 1);
        assert!("[category a]\n[filter a]".parse::<Document>().is_err());
    }

    #[test]
    fn display_round_trips() {
        let text = "# demo\n[category c]\nbuiltin = finset(2)\n\n[sequences s]\nitem = seq tail=id except {0:3}\n";
        let doc: Document = text.parse().unwrap();
        assert_eq!(doc.sections[1].entries[0].value, "seq tail=id except {0:3}");
        let again: Document = doc.to_string().parse().unwrap();
        assert_eq!(doc, again);
    }
}
