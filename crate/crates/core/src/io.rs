//! Text formats: graph6 and a plain edge list.
//!
//! graph6 stores `n` in one byte (`n + 63`) for `n <= 62` and as `126`
//! followed by three 6-bit bytes up to 258047, then the upper triangle of the
//! adjacency matrix column by column (`(0,1), (0,2), (1,2), (0,3), ...`),
//! six bits per byte, padded with zeros, each byte offset by 63.
//!
//! The edge list has `n` on the first line and one `a b` pair per line after
//! it; `#` starts a comment.

use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("byte {byte:#04x} at position {pos} is outside the graph6 range")]
    BadByte { pos: usize, byte: u8 },
    #[error("expected {expected} data bytes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("nonzero padding bits")]
    Padding,
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    IndexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: non-simple edge ({a}, {b})")]
    NonSimpleEdge { line: usize, a: usize, b: usize },
    #[error("line {line}: expected two vertex indices")]
    MalformedLine { line: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" => Ok(Format::EdgeList),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

pub fn parse_graph(input: &str, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Graph6 => from_graph6(input.trim()),
        Format::EdgeList => from_edge_list(input),
    }
}

/// Guesses the format: an edge list starts with a decimal vertex count.
pub fn detect_format(input: &str) -> Format {
    let first = input
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if !first.is_empty() && first.bytes().all(|b| b.is_ascii_digit()) {
        Format::EdgeList
    } else {
        Format::Graph6
    }
}

pub fn from_graph6(s: &str) -> Result<Graph, ParseError> {
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    for (pos, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(ParseError::BadByte { pos, byte });
        }
    }
    let (n, data) = match bytes {
        [] => return Err(ParseError::MalformedHeader("empty input".into())),
        [126, 126, ..] => return Err(ParseError::MalformedHeader("n too large".into())),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(ParseError::MalformedHeader("truncated size field".into()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            if n <= 62 {
                return Err(ParseError::MalformedHeader(format!(
                    "non-minimal size field for n={n}"
                )));
            }
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(ParseError::WrongLength {
            expected,
            found: data.len(),
        });
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(ParseError::Padding);
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Reads one graph6 string per line, skipping blank lines.
pub fn read_catalog(text: &str) -> Result<Vec<Graph>, (usize, ParseError)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| from_graph6(l.trim()).map_err(|e| (i + 1, e)))
        .collect()
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn from_edge_list(s: &str) -> Result<Graph, ParseError> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((_, header)) = lines.next() else {
        return Err(ParseError::MalformedHeader("missing vertex count".into()));
    };
    let n: usize = header
        .parse()
        .map_err(|_| ParseError::MalformedHeader(format!("{header:?} is not a vertex count")))?;
    let mut g = Graph::empty(n)?;
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [a, b] = fields[..] else {
            return Err(ParseError::MalformedLine { line });
        };
        let (Ok(a), Ok(b)) = (a.parse::<usize>(), b.parse::<usize>()) else {
            return Err(ParseError::MalformedLine { line });
        };
        if let Some(vertex) = [a, b].into_iter().find(|&v| v >= n) {
            return Err(ParseError::IndexOutOfRange { line, vertex, n });
        }
        if a == b || g.has_edge(a, b) {
            return Err(ParseError::NonSimpleEdge { line, a, b });
        }
        g = Graph::from_edges(n, g.edges().into_iter().chain([(a, b)]))?;
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (a, b) in g.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn graph6_reference_strings() {
        let g = from_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(to_graph6(&g), "D?{");
        assert_eq!(to_graph6(&star(4)), "Ds_");
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(to_graph6(&empty(0)), "?");
        assert_eq!(
            to_graph6(&petersen()),
            from_graph6(&to_graph6(&petersen()))
                .map(|g| to_graph6(&g))
                .unwrap()
        );
    }

    #[test]
    fn graph6_long_header() {
        let g = path(63);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(
            from_graph6(""),
            Err(ParseError::MalformedHeader(_))
        ));
        assert!(matches!(
            from_graph6("D?"),
            Err(ParseError::WrongLength {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            from_graph6("D? {"),
            Err(ParseError::BadByte { pos: 2, .. })
        ));
        assert!(matches!(from_graph6("B@"), Err(ParseError::Padding)));
    }

    #[test]
    fn edge_lists() {
        assert_eq!(from_edge_list("3\n0 1\n1 2\n").unwrap(), path(3));
        assert_eq!(
            from_edge_list("# path\n3\n0 1 # first\n\n1 2\n").unwrap(),
            path(3)
        );
        assert_eq!(
            from_edge_list("2\n0 2\n"),
            Err(ParseError::IndexOutOfRange {
                line: 2,
                vertex: 2,
                n: 2
            })
        );
        assert_eq!(
            from_edge_list("2\n1 1\n"),
            Err(ParseError::NonSimpleEdge {
                line: 2,
                a: 1,
                b: 1
            })
        );
        assert_eq!(
            from_edge_list("3\n0 1\n1 0\n"),
            Err(ParseError::NonSimpleEdge {
                line: 3,
                a: 1,
                b: 0
            })
        );
        assert!(matches!(
            from_edge_list("x\n"),
            Err(ParseError::MalformedHeader(_))
        ));
        assert_eq!(
            from_edge_list("3\n0\n"),
            Err(ParseError::MalformedLine { line: 2 })
        );
        let g = petersen();
        assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn catalogs() {
        let gs = read_catalog("A_\n\nBw\n").unwrap();
        assert_eq!(gs, vec![complete(2), complete(3)]);
        assert_eq!(read_catalog("A_\nB").unwrap_err().0, 2);
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format("3\n0 1\n"), Format::EdgeList);
        assert_eq!(detect_format("D?{\n"), Format::Graph6);
        assert_eq!(detect_format("# c\n4\n"), Format::EdgeList);
    }
}
