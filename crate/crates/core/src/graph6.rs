//! graph6 text encoding of simple undirected graphs, plus a secondary
//! adjacency-list JSON format.
//!
//! The encoding follows the public format description distributed with
//! nauty/showg: a size header (one byte for n <= 62, the escape byte `~`
//! followed by three 6-bit digits for n <= 258047), then the upper triangle
//! of the adjacency matrix in column order, packed big-endian into 6-bit
//! groups, each offset by 63 into the printable range.

use crate::graph::Graph;
use crate::{Error, Result};

const OFFSET: u8 = 63;
const ESCAPE: u8 = 126;
const MAX_N: usize = 258_047;

/// Encodes a graph as a single graph6 line (no trailing newline).
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_N, "graph6 encoding supports at most {MAX_N} vertices");
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(ESCAPE);
        out.push(((n >> 12) & 63) as u8 + OFFSET);
        out.push(((n >> 6) & 63) as u8 + OFFSET);
        out.push((n & 63) as u8 + OFFSET);
    }
    let mut acc: u8 = 0;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("printable range")
}

/// Decodes one graph6 line. An optional `>>graph6<<` prefix is accepted.
pub fn decode(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\r', '\n']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty line".into()));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(OFFSET..=ESCAPE).contains(&b) {
            return Err(Error::Graph6(format!("byte {:#04x} at position {i} out of range", b)));
        }
    }
    let (n, mut pos) = if bytes[0] == ESCAPE {
        if bytes.len() >= 2 && bytes[1] == ESCAPE {
            return Err(Error::Graph6("graphs beyond 258047 vertices unsupported".into()));
        }
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated size header".into()));
        }
        let n = ((bytes[1] - OFFSET) as usize) << 12
            | ((bytes[2] - OFFSET) as usize) << 6
            | (bytes[3] - OFFSET) as usize;
        (n, 4)
    } else {
        ((bytes[0] - OFFSET) as usize, 1)
    };

    let bit_len = n * (n.saturating_sub(1)) / 2;
    let body_len = bit_len.div_ceil(6);
    if bytes.len() - pos != body_len {
        return Err(Error::Graph6(format!(
            "expected {body_len} body bytes for n={n}, found {}",
            bytes.len() - pos
        )));
    }

    let mut g = Graph::empty(n);
    let mut acc: u8 = 0;
    let mut avail = 0;
    for v in 1..n {
        for u in 0..v {
            if avail == 0 {
                acc = bytes[pos] - OFFSET;
                pos += 1;
                avail = 6;
            }
            if acc & 0b10_0000 != 0 {
                g.set_edge(u, v);
            }
            acc <<= 1;
            acc &= 0b11_1111;
            avail -= 1;
        }
    }
    // Padding bits must be zero per the format.
    if acc != 0 {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    Ok(g)
}

/// Adjacency-list JSON form: `{"n": ..., "edges": [[u, v], ...]}`.
#[derive(serde::Serialize, serde::Deserialize)]
pub struct AdjacencyJson {
    /// Vertex count.
    pub n: usize,
    /// Edge list with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

/// Serializes a graph to the adjacency JSON format.
pub fn to_adjacency_json(g: &Graph) -> String {
    let doc = AdjacencyJson {
        n: g.n(),
        edges: g.edges().collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

/// Parses the adjacency JSON format.
pub fn from_adjacency_json(text: &str) -> Result<Graph> {
    let doc: AdjacencyJson = serde_json::from_str(text)?;
    Graph::from_edges(doc.n, &doc.edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_order_graph_is_question_mark() {
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(decode("?").unwrap().n(), 0);
    }

    #[test]
    fn k3_is_bw() {
        // Standard encoding of the triangle.
        assert_eq!(encode(&Graph::complete(3)), "Bw");
        let g = decode("Bw").unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 3));
    }

    #[test]
    fn five_vertex_reference_vector() {
        // 0-2, 0-4, 1-3, 3-4 encodes to DQc (nauty reference value).
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
    }

    #[test]
    fn long_form_header_round_trips() {
        let g = Graph::from_predicate(100, |u, v| (u + v) % 3 == 0);
        let enc = encode(&g);
        assert_eq!(enc.as_bytes()[0], ESCAPE);
        assert_eq!(decode(&enc).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(decode("").is_err());
        assert!(decode("B").is_err()); // truncated body
        assert!(decode("Bww").is_err()); // overlong body
        assert!(decode("B\u{19}").is_err()); // byte below range
        assert!(decode("Bx").is_err()); // nonzero padding
        assert!(decode("~B").is_err()); // truncated long header
    }

    #[test]
    fn accepts_header_prefix() {
        let g = decode(">>graph6<<Bw").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn adjacency_json_round_trip() {
        let g = Graph::friendship(3).unwrap();
        let text = to_adjacency_json(&g);
        assert_eq!(from_adjacency_json(&text).unwrap(), g);
        assert!(from_adjacency_json("{\"n\": 2, \"edges\": [[0,0]]}").is_err());
    }
}
