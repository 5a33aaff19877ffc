//! Short-form graph6: one header byte `n + 63`, then the upper triangle of
//! the adjacency matrix column by column, six bits per byte, offset by 63.

use super::{Edge, Graph};
use crate::error::{Error, Result};

/// Largest order representable by the one-byte header.
pub const GRAPH6_MAX_N: usize = 62;

fn bit_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let parse_err = |offset: usize, message: &str| Error::Parse {
        offset,
        message: message.to_string(),
    };
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(parse_err(pos, "byte outside the printable range 63..126"));
    }
    let Some(&head) = bytes.first() else {
        return Err(parse_err(0, "empty input"));
    };
    if head == 126 {
        return Err(parse_err(0, "long-form header (n > 62) is not supported"));
    }
    let n = (head - 63) as usize;
    let bits = bit_count(n);
    let want = 1 + bits.div_ceil(6);
    if bytes.len() < want {
        return Err(parse_err(bytes.len(), "truncated adjacency bit vector"));
    }
    if bytes.len() > want {
        return Err(parse_err(want, "trailing bytes after adjacency bit vector"));
    }

    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    // padding bits must be zero
    while k % 6 != 0 {
        let byte = bytes[1 + k / 6] - 63;
        if byte & (1 << (5 - k % 6)) != 0 {
            return Err(parse_err(1 + k / 6, "nonzero padding bit"));
        }
        k += 1;
    }
    Graph::from_edges(n, pairs)
}

pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Error::UnsupportedSize {
            n,
            max: GRAPH6_MAX_N,
        });
    }
    let bits = bit_count(n);
    let mut body = vec![0u8; bits.div_ceil(6)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.contains_edge(Edge::new(i, j)) {
                body[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(1 + body.len());
    out.push((n as u8 + 63) as char);
    out.extend(body.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    /// Hand encoding from the format rules: header byte, then bits
    /// x(0,1) x(0,2) x(1,2) ... packed big-endian into 6-bit groups.
    fn encode_by_hand(n: usize, bits: &[u8]) -> String {
        let mut s = String::new();
        s.push((n as u8 + 63) as char);
        for chunk in bits.chunks(6) {
            let mut v = 0u8;
            for (i, b) in chunk.iter().enumerate() {
                v |= b << (5 - i);
            }
            s.push((v + 63) as char);
        }
        s
    }

    #[test]
    fn small_examples_match_hand_encoding() {
        assert_eq!(encode_by_hand(1, &[]), "@");
        assert_eq!(encode_by_hand(2, &[1]), "A_");
        assert_eq!(encode_by_hand(3, &[1, 1, 1]), "Bw");

        let g = parse_graph6("@").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        assert_eq!(parse_graph6("A_").unwrap(), named::complete(2));
        assert_eq!(parse_graph6("Bw").unwrap(), named::complete(3));

        assert_eq!(write_graph6(&named::complete(2)).unwrap(), "A_");
        assert_eq!(write_graph6(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(write_graph6(&named::complete(3)).unwrap(), "Bw");
        assert_eq!(write_graph6(&Graph::empty(0)).unwrap(), "?");
    }

    #[test]
    fn petersen_has_its_usual_code() {
        // nauty's geng/showg code for the Petersen graph
        let p = parse_graph6("IheA@GUAo").unwrap();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(p.vertices().all(|v| p.degree(v) == 3));
    }

    #[test]
    fn errors_name_the_offset() {
        match parse_graph6("B w") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match parse_graph6("D") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match parse_graph6("A_?") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_graph6("~"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
        // K2 with a padding bit set
        assert!(matches!(parse_graph6("A`"), Err(Error::Parse { offset: 1, .. })));
    }

    #[test]
    fn oversize_write_is_rejected() {
        assert!(matches!(
            write_graph6(&Graph::empty(63)),
            Err(Error::UnsupportedSize { n: 63, max: 62 })
        ));
        assert!(write_graph6(&Graph::empty(62)).is_ok());
    }
}
