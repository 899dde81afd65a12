//! graph6 and plain adjacency-list text.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Graph6,
    Adjacency,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "adj" | "adjacency" | "edges" | "txt" => Ok(Format::Adjacency),
            other => Err(Error::invalid("formats", format!("unknown format '{other}'"))),
        }
    }
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
}

/// graph6 string: order prefix, then the upper triangle column by column,
/// packed into 6-bit big-endian groups offset by 63.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("printable ASCII")
}

/// Parses one graph6 string. An optional `>>graph6<<` header is skipped;
/// error positions are byte offsets into the given text.
pub fn from_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (offset, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    let at = |pos: usize| format!("byte {}", offset + pos);
    for (pos, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(at(pos), format!("byte 0x{b:02x} is outside the graph6 range")));
        }
    }
    let value = |pos: usize| -> Result<usize> {
        body.get(pos)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| Error::parse(at(pos), "unexpected end of input in order prefix"))
    };
    let read = |from: usize, count: usize| -> Result<usize> {
        (from..from + count).try_fold(0usize, |acc, p| Ok((acc << 6) | value(p)?))
    };
    if body.is_empty() {
        return Err(Error::parse(at(0), "empty graph6 string"));
    }
    let (n, start) = if body[0] != 126 {
        (value(0)?, 1)
    } else if body.get(1) != Some(&126) {
        (read(1, 3)?, 4)
    } else {
        (read(2, 6)?, 8)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = start + bits.div_ceil(6);
    if body.len() != expected {
        let pos = body.len().min(expected);
        return Err(Error::parse(
            at(pos),
            format!("expected {expected} bytes for {n} vertices, found {}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut idx = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[start + idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    if !idx.is_multiple_of(6) {
        let last = body[expected - 1] - 63;
        if last & ((1 << (6 - idx % 6)) - 1) != 0 {
            return Err(Error::parse(at(expected - 1), "non-zero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

/// `n m` on the first line, then one `u v` pair per edge.
pub fn to_adjacency(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses adjacency text. Blank lines and lines starting with `#` are
/// skipped; line numbers in errors are 1-based.
pub fn from_adjacency(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let pair = |line: usize, l: &str| -> Result<(usize, usize)> {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(format!("line {line}"), format!("expected two integers, found '{l}'")));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(format!("line {line}"), format!("'{s}' is not a non-negative integer")))
        };
        Ok((num(fields[0])?, num(fields[1])?))
    };
    let (hline, header) = lines.next().ok_or_else(|| Error::parse("line 1", "missing 'n m' header"))?;
    let (n, m) = pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = pair(line, l)?;
        if u >= n || v >= n {
            return Err(Error::parse(format!("line {line}"), format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Err(Error::parse(format!("line {line}"), format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(
            format!("line {hline}"),
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

/// Guesses the format from the extension, then from the content.
pub fn detect_format(path: &Path, text: &str) -> Format {
    match path.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase()) {
        Some(e) if e == "g6" || e == "graph6" => return Format::Graph6,
        Some(e) if e == "adj" || e == "txt" || e == "edges" => return Format::Adjacency,
        _ => {}
    }
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with(HEADER) => Format::Graph6,
        Some(l) if l.split_whitespace().count() == 1 && !l.bytes().all(|b| b.is_ascii_digit()) => Format::Graph6,
        _ => Format::Adjacency,
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => {
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            from_graph6(line.trim())
        }
        Format::Adjacency => from_adjacency(text),
    }
}

/// Reads a graph file; `None` detects the format.
pub fn load_graph(path: &Path, format: Option<Format>) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    let format = format.unwrap_or_else(|| detect_format(path, &text));
    parse_graph(&text, format)
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => to_graph6(g) + "\n",
        Format::Adjacency => to_adjacency(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, petersen};

    #[test]
    fn graph6_known_strings() {
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&petersen()), "IheA@GUAo");
        let g = from_graph6("IsP@OkWHG").unwrap();
        assert_eq!((g.order(), g.edge_count(), g.is_regular()), (10, 15, Some(3)));
        assert_eq!(to_graph6(&g), "IsP@OkWHG");
        assert_eq!(from_graph6(">>graph6<<C~\n").unwrap().edge_count(), 6);
    }

    #[test]
    fn graph6_long_order_prefix() {
        let g = Graph::from_edges(100, (0..99).map(|i| (i, i + 1))).unwrap();
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63 + 36]);
        let back = from_graph6(&s).unwrap();
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn graph6_errors_carry_position() {
        match from_graph6("C ") {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "byte 1"),
            other => panic!("{other:?}"),
        }
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("C~~").is_err());
        assert!(from_graph6("").is_err());
        // K2 with a stray padding bit.
        assert!(from_graph6("A_").is_ok());
        assert!(from_graph6("A`").is_err());
    }

    #[test]
    fn adjacency_text() {
        let g = from_adjacency("2 1\n0 1\n").unwrap();
        assert_eq!((g.order(), g.edge_count()), (2, 1));
        let g = from_adjacency("# comment\n3 2\n\n0 1\n# mid\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        match from_adjacency("2 1\na b\n") {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "line 2"),
            other => panic!("{other:?}"),
        }
        assert!(from_adjacency("2 2\n0 1\n").is_err());
        assert!(from_adjacency("2 1\n0 0\n").is_err());
        assert!(from_adjacency("3 2\n0 1\n1 0\n").is_err());
        assert!(from_adjacency("2 1\n0 5\n").is_err());
        let p = petersen();
        let back = from_adjacency(&to_adjacency(&p)).unwrap();
        assert_eq!(back.edges().collect::<Vec<_>>(), p.edges().collect::<Vec<_>>());
    }

    #[test]
    fn detection() {
        let p = Path::new("x");
        assert_eq!(detect_format(p, "IsP@OkWHG\n"), Format::Graph6);
        assert_eq!(detect_format(p, "2 1\n0 1\n"), Format::Adjacency);
        assert_eq!(detect_format(Path::new("a.g6"), "2 1"), Format::Graph6);
        assert_eq!(detect_format(p, "# c\n>>graph6<<C~"), Format::Graph6);
    }
}
