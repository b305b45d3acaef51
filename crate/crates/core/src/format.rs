//! Text formats.
//!
//! Hypergraph files:
//!
//! ```text
//! c optional comments, anywhere
//! p hm3 <n> <m>
//! e <u> <v> <w>      (m lines, 1-indexed, any vertex order)
//! ```
//!
//! Witness files carry a status line followed by the matching edges:
//!
//! ```text
//! s PERFECT|MAXIMUM <k>
//! e <u> <v> <w>      (k lines)
//! ```

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::hypergraph::{sort3, Hypergraph3, HypergraphBuilder, Triple, MAX_ORDER};
use crate::matching::Matching;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `p hm3 <n> <m>` header")]
    MissingHeader,
    #[error("malformed header")]
    MalformedHeader,
    #[error("second header")]
    DuplicateHeader,
    #[error("order {0} exceeds the supported maximum")]
    OrderTooLarge(usize),
    #[error("malformed edge line")]
    MalformedEdge,
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge repeats a vertex")]
    DuplicateVertexInEdge,
    #[error("edge {0:?} listed twice")]
    DuplicateEdge([usize; 3]),
    #[error("header declares {declared} edges, found {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("unrecognised line")]
    UnexpectedLine,
    #[error("missing `s PERFECT|MAXIMUM <k>` status line")]
    MissingStatus,
    #[error("malformed status line")]
    MalformedStatus,
}

/// Parse failure at a 1-based line number. Line 0 refers to the end of input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Meaningful lines with their 1-based numbers; blank lines and `c` comments
/// are dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, toks)),
        }
    })
}

/// Parses `e u v w` into a sorted 0-indexed triple. `n` bounds the labels
/// when known.
fn parse_edge(line: usize, toks: &[&str], n: Option<usize>) -> Result<Triple, ParseError> {
    if toks.len() != 4 {
        return Err(err(line, ParseErrorKind::MalformedEdge));
    }
    let mut t = [0usize; 3];
    for (slot, tok) in t.iter_mut().zip(&toks[1..]) {
        let v: usize = tok.parse().map_err(|_| err(line, ParseErrorKind::MalformedEdge))?;
        let limit = n.unwrap_or(MAX_ORDER);
        if v == 0 || v > limit {
            return Err(err(line, ParseErrorKind::VertexOutOfRange { vertex: v, n: limit }));
        }
        *slot = v - 1;
    }
    let t = sort3(t);
    if t[0] == t[1] || t[1] == t[2] {
        return Err(err(line, ParseErrorKind::DuplicateVertexInEdge));
    }
    Ok(t)
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph3, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(err(0, ParseErrorKind::MissingHeader))?;
    if header[0] != "p" {
        return Err(err(hline, ParseErrorKind::MissingHeader));
    }
    if header.len() != 4 || header[1] != "hm3" {
        return Err(err(hline, ParseErrorKind::MalformedHeader));
    }
    let n: usize = header[2].parse().map_err(|_| err(hline, ParseErrorKind::MalformedHeader))?;
    let m: usize = header[3].parse().map_err(|_| err(hline, ParseErrorKind::MalformedHeader))?;
    if n > MAX_ORDER {
        return Err(err(hline, ParseErrorKind::OrderTooLarge(n)));
    }
    let mut b = HypergraphBuilder::new(n).map_err(|_| err(hline, ParseErrorKind::OrderTooLarge(n)))?;
    let mut found = 0;
    for (line, toks) in lines {
        match toks[0] {
            "e" => {
                let t = parse_edge(line, &toks, Some(n))?;
                if !b.insert(t).expect("labels checked against n") {
                    return Err(err(line, ParseErrorKind::DuplicateEdge([t[0] + 1, t[1] + 1, t[2] + 1])));
                }
                found += 1;
            }
            "p" => return Err(err(line, ParseErrorKind::DuplicateHeader)),
            _ => return Err(err(line, ParseErrorKind::UnexpectedLine)),
        }
    }
    if found != m {
        return Err(err(0, ParseErrorKind::CountMismatch { declared: m, found }));
    }
    Ok(b.build())
}

fn push_edge(out: &mut String, e: Triple) {
    writeln!(out, "e {} {} {}", e[0] + 1, e[1] + 1, e[2] + 1).expect("writing to a String");
}

/// Canonical form: header, then edges in colex order with ascending labels.
pub fn write_hypergraph(h: &Hypergraph3) -> String {
    let mut out = format!("p hm3 {} {}\n", h.n(), h.edge_count());
    for e in h.edges() {
        push_edge(&mut out, e);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Perfect,
    Maximum,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Perfect => "PERFECT",
            WitnessKind::Maximum => "MAXIMUM",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub edges: Vec<Triple>,
}

/// Witness lines for `m`, edges in colex order.
pub fn write_witness(kind: WitnessKind, m: &Matching) -> String {
    let mut out = format!("s {kind} {}\n", m.len());
    for e in m.sorted_edges() {
        push_edge(&mut out, e);
    }
    out
}

/// Parses a witness. Labels are range-checked against `n` when given;
/// edge membership and disjointness are left to the verifier.
pub fn parse_witness(text: &str, n: Option<usize>) -> Result<Witness, ParseError> {
    let mut lines = content_lines(text);
    let (sline, status) = lines.next().ok_or(err(0, ParseErrorKind::MissingStatus))?;
    if status[0] != "s" {
        return Err(err(sline, ParseErrorKind::MissingStatus));
    }
    if status.len() != 3 {
        return Err(err(sline, ParseErrorKind::MalformedStatus));
    }
    let kind = match status[1] {
        "PERFECT" => WitnessKind::Perfect,
        "MAXIMUM" => WitnessKind::Maximum,
        _ => return Err(err(sline, ParseErrorKind::MalformedStatus)),
    };
    let k: usize = status[2].parse().map_err(|_| err(sline, ParseErrorKind::MalformedStatus))?;
    let mut edges = Vec::new();
    for (line, toks) in lines {
        match toks[0] {
            "e" => edges.push(parse_edge(line, &toks, n)?),
            "s" => return Err(err(line, ParseErrorKind::MalformedStatus)),
            _ => return Err(err(line, ParseErrorKind::UnexpectedLine)),
        }
    }
    if edges.len() != k {
        return Err(err(
            0,
            ParseErrorKind::CountMismatch {
                declared: k,
                found: edges.len(),
            },
        ));
    }
    Ok(Witness { kind, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let h = parse_hypergraph("p hm3 3 1\ne 1 2 3").unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![[0, 1, 2]]);
        assert!(parse_hypergraph("c hello\n\np hm3 3 1\nc mid\ne 3 1 2\n").unwrap().contains([0, 1, 2]));
    }

    #[test]
    fn complete_six_round_trip() {
        let mut text = String::from("p hm3 6 20\n");
        for c in 2..6 {
            for b in 1..c {
                for a in 0..b {
                    text.push_str(&format!("e {} {} {}\n", a + 1, b + 1, c + 1));
                }
            }
        }
        let h = parse_hypergraph(&text).unwrap();
        assert_eq!(h, Hypergraph3::complete(6));
        assert_eq!(write_hypergraph(&h), text);
    }

    #[test]
    fn error_kinds_and_lines() {
        let kind = |s: &str| parse_hypergraph(s).unwrap_err();
        assert_eq!(kind("p hm3 3 1\ne 1 2 2"), err(2, ParseErrorKind::DuplicateVertexInEdge));
        assert_eq!(kind("e 1 2 3"), err(1, ParseErrorKind::MissingHeader));
        assert_eq!(kind(""), err(0, ParseErrorKind::MissingHeader));
        assert_eq!(kind("p hm3 x 1"), err(1, ParseErrorKind::MalformedHeader));
        assert_eq!(kind("p dimacs 3 1"), err(1, ParseErrorKind::MalformedHeader));
        assert_eq!(
            kind("p hm3 3 1\n\ne 1 2 4"),
            err(3, ParseErrorKind::VertexOutOfRange { vertex: 4, n: 3 })
        );
        assert_eq!(
            kind("p hm3 3 1\ne 0 1 2"),
            err(2, ParseErrorKind::VertexOutOfRange { vertex: 0, n: 3 })
        );
        assert_eq!(
            kind("p hm3 4 2\ne 1 2 3\ne 3 2 1"),
            err(3, ParseErrorKind::DuplicateEdge([1, 2, 3]))
        );
        assert_eq!(
            kind("p hm3 4 2\ne 1 2 3"),
            err(0, ParseErrorKind::CountMismatch { declared: 2, found: 1 })
        );
        assert_eq!(kind("p hm3 4 1\ne 1 2"), err(2, ParseErrorKind::MalformedEdge));
        assert_eq!(kind("p hm3 4 1\nx 1 2 3"), err(2, ParseErrorKind::UnexpectedLine));
        assert_eq!(kind("p hm3 4 0\np hm3 4 0"), err(2, ParseErrorKind::DuplicateHeader));
        assert_eq!(kind("p hm3 5000 0"), err(1, ParseErrorKind::OrderTooLarge(5000)));
    }

    #[test]
    fn witness_round_trip() {
        let m = Matching::from_edges(6, [[3, 4, 5], [0, 1, 2]]).unwrap();
        let text = write_witness(WitnessKind::Perfect, &m);
        assert_eq!(text, "s PERFECT 2\ne 1 2 3\ne 4 5 6\n");
        let w = parse_witness(&text, Some(6)).unwrap();
        assert_eq!(w.kind, WitnessKind::Perfect);
        assert_eq!(w.edges, vec![[0, 1, 2], [3, 4, 5]]);
        assert_eq!(
            parse_witness("s MAXIMUM 1\n", None).unwrap_err(),
            err(0, ParseErrorKind::CountMismatch { declared: 1, found: 0 })
        );
        assert_eq!(parse_witness("s HALF 0", None).unwrap_err(), err(1, ParseErrorKind::MalformedStatus));
        assert_eq!(parse_witness("e 1 2 3", None).unwrap_err(), err(1, ParseErrorKind::MissingStatus));
        assert_eq!(
            parse_witness("s MAXIMUM 1\ne 1 2 9", Some(6)).unwrap_err(),
            err(2, ParseErrorKind::VertexOutOfRange { vertex: 9, n: 6 })
        );
    }
}
