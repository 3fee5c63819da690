//! graph6 (without the `>>graph6<<` header) and the plain `n m` / `u v`
//! edge-list text format.

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
}

/// Encode as a graph6 string (no header, no trailing newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
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
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Decode a graph6 string. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored; padding bits must be zero.
pub fn read_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let bad = |msg: &str| Error::parse(1, format!("graph6: {msg}"));
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let sixes = |s: &[u8]| s.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
    let (n, body) = match bytes {
        [] => return Err(bad("empty input")),
        [126, 126, rest @ ..] if rest.len() >= 6 => (sixes(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 => (sixes(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(bad("truncated size field")),
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return Err(bad(&format!(
            "expected {} data bytes for n={n}, found {}",
            pairs.div_ceil(6),
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    if (k..body.len() * 6).any(bit) {
        return Err(bad("nonzero padding bits"));
    }
    Ok(g)
}

/// Parse the edge-list format: a first line `n m`, then `m` lines `u v` with
/// 0-based endpoints. Blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header line"))?;
    let nums = |line: usize, s: &str| -> Result<(usize, usize)> {
        let mut it = s.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(Error::parse(
                line,
                format!("expected two non-negative integers, got {s:?}"),
            )),
        }
    };
    let (n, m) = nums(hl, header)?;
    let mut arcs = Vec::with_capacity(m);
    for (line, s) in lines {
        let (u, v) = nums(line, s)?;
        if u >= n || v >= n {
            return Err(Error::parse(line, format!("vertex out of range for n={n}")));
        }
        if u == v {
            return Err(Error::parse(line, "self-loop"));
        }
        arcs.push((u, v));
    }
    if arcs.len() != m {
        return Err(Error::parse(
            hl,
            format!("header announces {m} edges, found {}", arcs.len()),
        ));
    }
    Ok((n, arcs))
}

/// Write the edge-list format, LF-terminated.
pub fn write_edge_list(n: usize, arcs: &[(usize, usize)]) -> String {
    let mut out = format!("{n} {}\n", arcs.len());
    for (u, v) in arcs {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        // petgraph / nauty reference values
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g), "DQc");
        assert_eq!(write_graph6(&Graph::empty(0)), "?");
        assert_eq!(write_graph6(&Graph::empty(1)), "@");
        assert_eq!(write_graph6(&Graph::complete(2)), "A_");
        assert_eq!(write_graph6(&Graph::cycle(5).unwrap()), "Dhc");
    }

    #[test]
    fn large_size_field() {
        let mut g = Graph::empty(100);
        g.add_edge(3, 99);
        let s = write_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(read_graph6(&s).unwrap(), g);
    }

    #[test]
    fn decode_rejects_garbage() {
        assert!(read_graph6("").is_err());
        assert!(read_graph6("D").is_err());
        assert!(read_graph6("A`").is_err()); // padding bit set
        assert!(read_graph6("D\u{1}cc").is_err());
        assert_eq!(read_graph6(">>graph6<<A_\n").unwrap(), Graph::complete(2));
    }

    #[test]
    fn edge_list_roundtrip() {
        let text = "3 2\n0 1\n2 1\n";
        let (n, arcs) = parse_edge_list(text).unwrap();
        assert_eq!((n, arcs.clone()), (3, vec![(0, 1), (2, 1)]));
        assert_eq!(write_edge_list(n, &arcs), text);
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 3\n").is_err());
        assert!(parse_edge_list("3 1\n1 1\n").is_err());
        assert!(parse_edge_list("x\n").is_err());
    }
}
