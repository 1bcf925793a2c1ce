//! Complex files.
//!
//! Text: a header line `m <count>`, then one facet per line as
//! space-separated labels; `#` starts a comment. JSON:
//! `{"schema": 1, "m": .., "facets": [[..], ..], "name": .., "metadata": ..}`
//! with unknown fields rejected. The canonical writer of either format
//! round-trips byte for byte.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub const JSON_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub schema: u32,
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

impl ComplexDocument {
    pub fn new(k: &SimplicialComplex, name: Option<&str>) -> Self {
        ComplexDocument {
            schema: JSON_SCHEMA,
            m: k.vertex_count(),
            facets: k.facet_lists(),
            name: name.map(str::to_string),
            metadata: None,
        }
    }

    pub fn complex(&self) -> Result<SimplicialComplex> {
        if self.schema != JSON_SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {}", self.schema)));
        }
        SimplicialComplex::new(self.m, &self.facets)
    }
}

fn parse_label(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse(format!("line {line}: `{tok}` is not a vertex label")))
}

pub fn parse_text(text: &str) -> Result<SimplicialComplex> {
    let mut m = None;
    let mut facets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        if m.is_none() {
            match (toks.next(), toks.next(), toks.next()) {
                (Some("m"), Some(n), None) => m = Some(parse_label(n, i + 1)?),
                _ => return Err(Error::Parse(format!("line {}: expected header `m <count>`", i + 1))),
            }
            continue;
        }
        facets.push(toks.map(|t| parse_label(t, i + 1)).collect::<Result<Vec<_>>>()?);
    }
    let m = m.ok_or_else(|| Error::Parse("missing header `m <count>`".into()))?;
    SimplicialComplex::new(m, &facets)
}

pub fn parse_json(text: &str) -> Result<ComplexDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_any(text: &str) -> Result<SimplicialComplex> {
    if text.trim_start().starts_with('{') {
        parse_json(text)?.complex()
    } else {
        parse_text(text)
    }
}

pub fn read_complex(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    parse_any(&fs::read_to_string(path)?)
}

pub fn write_text(k: &SimplicialComplex) -> String {
    k.canonical_text()
}

pub fn write_json(k: &SimplicialComplex, name: Option<&str>) -> String {
    let mut s = serde_json::to_string_pretty(&ComplexDocument::new(k, name)).expect("document serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format() {
        let k = parse_text("# pentagon\nm 5\n1 2\n2 3 # edge\n\n3 4\n4 5\n1 5\n").unwrap();
        assert_eq!(k, SimplicialComplex::polygon(5));
        assert_eq!(write_text(&k), "m 5\n1 2\n1 5\n2 3\n3 4\n4 5\n");
        assert_eq!(parse_text(&write_text(&k)).unwrap(), k);
    }

    #[test]
    fn text_errors() {
        assert!(matches!(parse_text("1 2 3\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_text("m x\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_text("m 3\n1 2 z\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_text(""), Err(Error::Parse(_))));
        assert!(matches!(parse_text("m 3\n1 2 4\n"), Err(Error::LabelOutOfRange { .. })));
        assert!(matches!(parse_text("m 3\n1 2\n"), Err(Error::MissingVertex(3))));
    }

    #[test]
    fn json_format() {
        let k = SimplicialComplex::cross_polytope(3);
        let s = write_json(&k, Some("octahedron"));
        let doc = parse_json(&s).unwrap();
        assert_eq!(doc.name.as_deref(), Some("octahedron"));
        assert_eq!(doc.complex().unwrap(), k);
        assert_eq!(write_json(&doc.complex().unwrap(), doc.name.as_deref()), s);
        assert_eq!(parse_any(&s).unwrap(), k);

        let extra = r#"{"schema": 1, "m": 2, "facets": [[1], [2]], "colour": "red"}"#;
        assert!(matches!(parse_json(extra), Err(Error::Parse(_))));
        let future = r#"{"schema": 2, "m": 2, "facets": [[1], [2]]}"#;
        assert!(parse_any(future).is_err());
        let meta = r#"{"schema": 1, "m": 2, "facets": [[1], [2]], "metadata": {"source": "hand"}}"#;
        assert_eq!(parse_any(meta).unwrap().vertex_count(), 2);
    }
}
