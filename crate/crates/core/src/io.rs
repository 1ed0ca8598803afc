//! Text formats: graph6 and a plain edge list.
//!
//! graph6 stores `n` in a length header (one byte `n + 63` for `n <= 62`,
//! otherwise `~` plus three 6-bit bytes) followed by the upper triangle of
//! the adjacency matrix in column-major order, six bits per byte, each byte
//! offset by 63.

use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed graph6 header")]
    BadHeader,
    #[error("graph6 payload ends early: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
    #[error("unexpected data after graph6 payload")]
    TrailingGarbage,
    #[error("graph6 payload byte {byte:#04x} at offset {offset} is outside 63..=126")]
    BadPayload { offset: usize, byte: u8 },
    #[error("graph on {0} vertices exceeds the supported width of {MAX_VERTICES}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

fn sextet(b: u8) -> Option<u8> {
    (63..=126).contains(&b).then(|| b - 63)
}

/// Decodes one graph6 line. A trailing newline is accepted; an optional
/// `>>graph6<<` prefix is not.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (n, header) = match bytes {
        [] => return Err(Graph6Error::BadHeader),
        [b'~', b'~', rest @ ..] => {
            let digits = rest.get(..6).ok_or(Graph6Error::BadHeader)?;
            (read_sextets(digits)?, 8)
        }
        [b'~', rest @ ..] => {
            let digits = rest.get(..3).ok_or(Graph6Error::BadHeader)?;
            (read_sextets(digits)?, 4)
        }
        [b, ..] => (sextet(*b).ok_or(Graph6Error::BadHeader)? as usize, 1),
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let payload = &bytes[header..];
    if payload.len() < expected {
        return Err(Graph6Error::TruncatedPayload { expected, found: payload.len() });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingGarbage);
    }
    if let Some(offset) = payload.iter().position(|&b| sextet(b).is_none()) {
        return Err(Graph6Error::BadPayload { offset: header + offset, byte: payload[offset] });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (payload[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::build(n, edges).expect("graph6 decoding yields a simple graph"))
}

fn read_sextets(digits: &[u8]) -> Result<usize, Graph6Error> {
    digits.iter().try_fold(0usize, |acc, &b| {
        let v = sextet(b).ok_or(Graph6Error::BadHeader)?;
        Ok(acc << 6 | v as usize)
    })
}

/// Encodes a graph as one graph6 line without a trailing newline.
pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// Parses `n <count>` followed by one `u v` pair per line. `#` starts a
/// comment; blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut n = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let syntax = |message: String| EdgeListError::Syntax { line, message };
        let number = |tok: &str| tok.parse::<usize>().map_err(|_| syntax(format!("expected a number, found {tok:?}")));
        let graph_err = |source| EdgeListError::Graph { line, source };
        match (n, tokens.as_slice()) {
            (None, ["n", count]) => {
                let count = number(count)?;
                if count > MAX_VERTICES {
                    return Err(graph_err(GraphError::TooManyVertices(count)));
                }
                n = Some(count);
            }
            (None, _) => return Err(syntax("expected header `n <count>`".into())),
            (Some(count), [a, b]) => {
                let (a, b) = (number(a)?, number(b)?);
                if let Some(&vertex) = [a, b].iter().find(|&&x| x >= count) {
                    return Err(graph_err(GraphError::VertexOutOfRange { vertex, n: count }));
                }
                let e = Edge::new(a, b).map_err(graph_err)?;
                if !seen.insert(e) {
                    return Err(graph_err(GraphError::DuplicateEdge(e)));
                }
                edges.push((a, b));
            }
            (Some(_), _) => return Err(syntax("expected `u v`".into())),
        }
    }
    let n = n.ok_or(EdgeListError::Syntax {
        line: text.lines().count().max(1),
        message: "missing header `n <count>`".into(),
    })?;
    Ok(Graph::build(n, edges).expect("edges validated line by line"))
}

/// `n <count>` then one sorted edge per line.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u(), e.v()));
    }
    out
}
