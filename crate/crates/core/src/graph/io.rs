use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

/// Parses `u v` lines with 1-based labels. `#` starts a comment.
///
/// With `n = None` the vertex count is the largest label seen (at least 1).
pub fn parse_edges(text: &str, n: Option<usize>) -> Result<Graph> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |msg: &str| Error::Parse {
            line: i + 1,
            msg: format!("{msg}: {raw:?}"),
        };
        let mut it = line.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(parse_err("expected two labels"));
        };
        let u: usize = a.parse().map_err(|_| parse_err("bad label"))?;
        let v: usize = b.parse().map_err(|_| parse_err("bad label"))?;
        if u == v {
            return Err(Error::Loop(u));
        }
        edges.push((u, v));
    }
    let n = match n {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(1),
    };
    Graph::from_edges(n, &edges)
}

/// Standard graph6 encoding (no `>>graph6<<` header), `n <= 62`.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = vec![(n as u8) + 63];
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).unwrap()
}

pub fn decode_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::Graph6("empty input".into()));
    };
    if !(63..=126).contains(&first) {
        return Err(Error::Graph6("bad header byte".into()));
    }
    if first == 126 {
        return Err(Error::Graph6("graphs above 62 vertices are not supported".into()));
    }
    let n = (first - 63) as usize;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[1..];
    if body.len() != nbytes {
        return Err(Error::Graph6(format!(
            "expected {nbytes} data bytes for n={n}, got {}",
            body.len()
        )));
    }
    let mut bits = Vec::with_capacity(nbytes * 6);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("byte {b} out of range")));
        }
        let x = b - 63;
        for s in (0..6).rev() {
            bits.push(x >> s & 1 == 1);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(Error::Graph6("nonzero padding".into()));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn parse_small_path() {
        let g = parse_edges("1 2\n2 3", Some(3)).unwrap();
        assert_eq!(g, Family::Path(3).build().unwrap());
        let g = parse_edges("# comment\n1 2 # trailing\n\n2 3\n1 2\n", None).unwrap();
        assert_eq!(g.e(), 2);
    }

    #[test]
    fn parse_empty_single_vertex() {
        let g = parse_edges("", Some(1)).unwrap();
        assert_eq!((g.n(), g.e()), (1, 0));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_edges("1 1", Some(2)), Err(Error::Loop(1))));
        assert!(matches!(
            parse_edges("1 4", Some(3)),
            Err(Error::VertexOutOfRange { label: 4, n: 3 })
        ));
        assert!(matches!(parse_edges("1 x", None), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edges("1 2 3", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn graph6_k3_by_hand() {
        // n=3 -> 'B'; bits x(0,1) x(0,2) x(1,2) = 111 padded to 111000 = 56 -> 'w'
        let k3 = Family::Complete(3).build().unwrap();
        assert_eq!(encode_graph6(&k3), "Bw");
        let d = decode_graph6("Bw").unwrap();
        assert!(d.is_complete() && d.n() == 3);
    }

    #[test]
    fn graph6_d_question_brace_is_star() {
        // 'D' = 5 vertices, body 000000 111100
        let g = decode_graph6("D?{").unwrap();
        assert_eq!(g, Family::CompleteBipartite(4, 1).build().unwrap());
        assert_eq!(encode_graph6(&g), "D?{");
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("Bx").is_err()); // padding bit set
        assert!(decode_graph6("B").is_err());
        assert!(decode_graph6(" ").is_err());
    }

    #[test]
    fn graph6_cycle_roundtrip() {
        let c5 = Family::Cycle(5).build().unwrap();
        assert_eq!(decode_graph6(&encode_graph6(&c5)).unwrap(), c5);
    }
}
