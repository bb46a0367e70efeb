//! Text formats for diagrams.
//!
//! The native format writes each vertex as one symbol of [`ALPHABET`] and
//! joins edges with commas, e.g. `123,345,561`. A trailing period is allowed
//! and whitespace is ignored. The numeric format writes vertices as
//! whitespace-separated decimal ids starting at 1 (`1 2 3,3 4 5`) and is
//! used for diagrams with more than 61 vertices.
//!
//! In files, one diagram occupies one line, `#` starts a comment and blank
//! lines are skipped.

use std::collections::HashMap;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, Validation};

/// Native vertex symbols, in collation order.
pub const ALPHABET: &str = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

/// Number of symbols in the native alphabet.
pub const NATIVE_LIMIT: usize = 61;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown symbol {symbol:?} at byte {position}")]
    UnknownSymbol { symbol: char, position: usize },
    #[error("bad vertex id {token:?} in edge {edge}")]
    BadNumber { token: String, edge: usize },
    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },
    #[error("no edges")]
    Empty,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("{0} vertices exceed the 61-symbol native alphabet; use the numeric format")]
    AlphabetExhausted(usize),
}

/// A parse failure tied to a 1-based line of a multi-diagram file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {error}")]
pub struct LineError {
    pub line: usize,
    pub error: ParseError,
}

/// Label used for vertex `v` when a diagram carries no stored labels.
pub fn default_label(v: usize) -> String {
    match ALPHABET.as_bytes().get(v) {
        Some(&c) => (c as char).to_string(),
        None => (v + 1).to_string(),
    }
}

/// Position of a native symbol in [`ALPHABET`].
pub fn symbol_index(c: char) -> Option<usize> {
    ALPHABET.find(c)
}

fn strip_period(text: &str) -> &str {
    let t = text.trim();
    t.strip_suffix('.').unwrap_or(t)
}

/// Parses one diagram in the native format with strict MMP validation.
pub fn parse_mmp(text: &str) -> Result<Diagram, ParseError> {
    parse_mmp_with(text, Validation::Strict)
}

/// Parses one native-format diagram. Vertices are numbered in order of
/// first appearance and keep their symbols as labels.
pub fn parse_mmp_with(text: &str, validation: Validation) -> Result<Diagram, ParseError> {
    let body = strip_period(text);
    if body.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut ids: HashMap<char, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut offset = text.len() - text.trim_start().len();
    for (i, part) in body.split(',').enumerate() {
        let mut edge = Vec::new();
        for (j, c) in part.char_indices() {
            if c.is_whitespace() {
                continue;
            }
            if symbol_index(c).is_none() {
                return Err(ParseError::UnknownSymbol { symbol: c, position: offset + j });
            }
            let next = ids.len();
            let id = *ids.entry(c).or_insert_with(|| {
                labels.push(c.to_string());
                next
            });
            edge.push(id);
        }
        if edge.is_empty() {
            return Err(ParseError::EmptyEdge { edge: i });
        }
        edges.push(edge);
        offset += part.len() + 1;
    }
    let d = Diagram::with_validation(labels.len(), edges, validation)?;
    Ok(d.with_labels(labels)?)
}

/// Parses one diagram in the numeric format.
pub fn parse_numeric_with(text: &str, validation: Validation) -> Result<Diagram, ParseError> {
    let body = strip_period(text);
    if body.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for (i, part) in body.split(',').enumerate() {
        let mut edge = Vec::new();
        for tok in part.split_whitespace() {
            let x: u64 = match tok.parse() {
                Ok(x) if x >= 1 => x,
                _ => return Err(ParseError::BadNumber { token: tok.to_string(), edge: i }),
            };
            let next = ids.len();
            let id = *ids.entry(x).or_insert_with(|| {
                labels.push(x.to_string());
                next
            });
            edge.push(id);
        }
        if edge.is_empty() {
            return Err(ParseError::EmptyEdge { edge: i });
        }
        edges.push(edge);
    }
    let d = Diagram::with_validation(labels.len(), edges, validation)?;
    Ok(d.with_labels(labels)?)
}

/// Whether a line looks like the numeric format: some edge holds two
/// whitespace-separated tokens.
pub fn looks_numeric(text: &str) -> bool {
    strip_period(text).split(',').any(|e| e.split_whitespace().count() > 1)
}

/// Parses either format, choosing by [`looks_numeric`].
pub fn parse_auto(text: &str, validation: Validation) -> Result<Diagram, ParseError> {
    if looks_numeric(text) {
        parse_numeric_with(text, validation)
    } else {
        parse_mmp_with(text, validation)
    }
}

/// Removes a `#` comment and surrounding whitespace.
pub fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

/// Parses a file with one diagram per line. Each result carries the
/// 1-based line number it came from.
pub fn parse_lines(text: &str, validation: Validation) -> Vec<Result<(usize, Diagram), LineError>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = strip_comment(raw);
            if line.is_empty() {
                return None;
            }
            Some(parse_auto(line, validation).map(|d| (i + 1, d)).map_err(|error| LineError { line: i + 1, error }))
        })
        .collect()
}

fn native_labels(d: &Diagram) -> Vec<String> {
    match d.labels() {
        Some(l) if l.iter().all(|s| s.chars().count() == 1 && symbol_index(s.chars().next().unwrap()).is_some()) => {
            l.to_vec()
        }
        _ => (0..d.n_vertices()).map(default_label).collect(),
    }
}

/// Writes a diagram in the native format, edges in stored order.
pub fn serialize(d: &Diagram) -> Result<String, FormatError> {
    if d.n_vertices() > NATIVE_LIMIT {
        return Err(FormatError::AlphabetExhausted(d.n_vertices()));
    }
    let labels = native_labels(d);
    let parts: Vec<String> = d.edges().iter().map(|e| e.iter().map(|&v| labels[v].as_str()).collect()).collect();
    Ok(parts.join(","))
}

/// Writes a diagram in the numeric format. Stored labels are reused when
/// they are all positive integers, otherwise vertex `v` is written `v + 1`.
pub fn serialize_numeric(d: &Diagram) -> String {
    let numeric = d.labels().filter(|l| l.iter().all(|s| s.parse::<u64>().map_or(false, |x| x >= 1)));
    let name = |v: usize| match numeric {
        Some(l) => l[v].clone(),
        None => (v + 1).to_string(),
    };
    let parts: Vec<String> =
        d.edges().iter().map(|e| e.iter().map(|&v| name(v)).collect::<Vec<_>>().join(" ")).collect();
    parts.join(",")
}

/// Native format when it fits, numeric otherwise.
pub fn serialize_any(d: &Diagram) -> String {
    serialize(d).unwrap_or_else(|_| serialize_numeric(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_has_61_distinct_symbols() {
        let mut v: Vec<char> = ALPHABET.chars().collect();
        assert_eq!(v.len(), NATIVE_LIMIT);
        v.dedup();
        assert_eq!(v.len(), NATIVE_LIMIT);
    }

    #[test]
    fn parses_small_diagrams() {
        let d = parse_mmp("1234,2356,1456").unwrap();
        assert_eq!((d.n_vertices(), d.n_edges()), (6, 3));
        assert!(d.edges().iter().all(|e| e.len() == 4));
        let d = parse_mmp("123").unwrap();
        assert_eq!((d.n_vertices(), d.n_edges()), (3, 1));
        let d = parse_mmp("123,345,561,275,476").unwrap();
        assert_eq!((d.n_vertices(), d.n_edges()), (7, 5));
    }

    #[test]
    fn period_and_whitespace_are_ignored() {
        let d = parse_mmp(" 12 3,3 45 .").unwrap();
        assert_eq!(serialize(&d).unwrap(), "123,345");
    }

    #[test]
    fn numbering_follows_first_appearance() {
        let d = parse_mmp("1AB,B2C").unwrap();
        assert_eq!(d.edges(), &[vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(d.label(1), "A");
        assert_eq!(serialize(&d).unwrap(), "1AB,B2C");
    }

    #[test]
    fn errors_are_specific() {
        assert!(matches!(parse_mmp("12@"), Err(ParseError::UnknownSymbol { symbol: '@', position: 2 })));
        assert!(matches!(
            parse_mmp("1231"),
            Err(ParseError::Diagram(DiagramError::DuplicateVertex { edge: 0, .. }))
        ));
        assert!(matches!(
            parse_mmp("123,321"),
            Err(ParseError::Diagram(DiagramError::DuplicateEdge { first: 0, second: 1 }))
        ));
        assert!(matches!(
            parse_mmp("123,35"),
            Err(ParseError::Diagram(DiagramError::Condition { condition: 2, edge: 1 }))
        ));
        assert!(parse_mmp_with("123,35", Validation::Relaxed).is_ok());
        assert!(matches!(parse_mmp("123,,4"), Err(ParseError::EmptyEdge { edge: 1 })));
    }

    #[test]
    fn single_edge_serializes_from_ids() {
        let d = Diagram::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(serialize(&d).unwrap(), "123");
    }

    #[test]
    fn alphabet_boundary() {
        let edges: Vec<Vec<usize>> = (0..31).map(|i| vec![2 * i, 2 * i + 1, 2 * i + 2]).collect();
        let d = Diagram::new(63, edges).unwrap();
        assert_eq!(serialize(&d), Err(FormatError::AlphabetExhausted(63)));
        let edges: Vec<Vec<usize>> = (0..30).map(|i| vec![2 * i, 2 * i + 1, 2 * i + 2]).collect();
        let d = Diagram::new(61, edges).unwrap();
        assert!(serialize(&d).unwrap().ends_with("xyz"));
        let edges: Vec<Vec<usize>> = (0..20).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).chain([vec![59, 60, 61]]).collect();
        let d = Diagram::new(62, edges).unwrap();
        assert_eq!(serialize(&d), Err(FormatError::AlphabetExhausted(62)));
    }

    #[test]
    fn numeric_round_trip() {
        let d = parse_auto("1 2 3, 3 4 5, 5 6 100", Validation::Strict).unwrap();
        assert_eq!(d.n_vertices(), 7);
        assert_eq!(serialize_numeric(&d), "1 2 3,3 4 5,5 6 100");
        assert!(looks_numeric("1 2 3,3 4 5"));
        assert!(!looks_numeric("123,345"));
    }

    #[test]
    fn files_skip_comments_and_blanks() {
        let text = "# census\n123,345\n\n  # note\n1234,2356,1456. # smallest\n12x,@\n";
        let got = parse_lines(text, Validation::Strict);
        assert_eq!(got.len(), 3);
        assert_eq!(got[0].as_ref().unwrap().0, 2);
        assert_eq!(got[1].as_ref().unwrap().0, 5);
        assert_eq!(got[2].as_ref().unwrap_err().line, 6);
    }
}
