//! Text formats: graph6 and the plain edge list (`n` then `u v` per line).

use super::Graph;
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn from_graph6(line: &str) -> Result<Graph> {
    let s = line.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("invalid graph6 byte {b:#x}")));
    }
    let (n, rest) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        return Err(Error::Parse("graph6 orders above 258047 are not supported".into()));
    };
    let needed_bits = n * n.saturating_sub(1) / 2;
    let needed_bytes = needed_bits.div_ceil(6);
    if rest.len() != needed_bytes {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {needed_bytes} for n = {n}",
            rest.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut cur = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            cur = (cur << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(cur + 63);
                cur = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((cur << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses the edge-list format. Blank lines and `#` comments are ignored.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing vertex count".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex count `{header}`")))?;
    let mut g = Graph::empty(n)?;
    for line in lines {
        let mut it = line.split_whitespace();
        let parse = |t: Option<&str>| -> Result<usize> {
            t.and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad edge line `{line}`")))
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        if it.next().is_some() {
            return Err(Error::Parse(format!("bad edge line `{line}`")));
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, connected_classes, cycle, path};
    use proptest::prelude::*;

    #[test]
    fn known_graph6_strings() {
        // Reference strings as produced by nauty's geng/showg.
        assert_eq!(to_graph6(&complete(4).unwrap()), "C~");
        assert_eq!(to_graph6(&path(3).unwrap()), "Bg");
        assert_eq!(to_graph6(&cycle(5).unwrap()), "Dhc");
        assert_eq!(from_graph6("C~").unwrap(), complete(4).unwrap());
        assert_eq!(
            from_graph6(">>graph6<<Dhc\n").unwrap(),
            cycle(5).unwrap()
        );
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("C~~").is_err());
        assert!(from_graph6("C\x10").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!(from_edge_list(&to_edge_list(&k33)).unwrap(), k33);
        let g = from_edge_list("# triangle\n3\n0 1\n1 2 # spine\n\n0 2\n").unwrap();
        assert_eq!(g, complete(3).unwrap());
        assert!(from_edge_list("3\n0 1 2\n").is_err());
        assert!(from_edge_list("3\n0 3\n").is_err());
        assert!(from_edge_list("").is_err());
    }

    proptest! {
        #[test]
        fn graph6_round_trips(n in 0usize..20, bits in proptest::collection::vec(any::<bool>(), 190)) {
            let mut g = Graph::empty(n).unwrap();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] { g.add_edge(u, v).unwrap(); }
                    k += 1;
                }
            }
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn graph6_catalog_round_trip() {
        for g in connected_classes(5).unwrap() {
            assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }
}
