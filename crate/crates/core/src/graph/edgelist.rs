//! Plain edge-list text: a header line `n m` followed by `m` lines `u v`,
//! 0-indexed. Blank lines and lines starting with `#` are ignored.

use super::{Arc, Graph, Orientation};
use crate::error::{Error, Result};

fn numbers(text: &str) -> Result<Vec<(usize, usize)>> {
    // (value, byte offset) pairs
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim_start();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            let mut col = 0;
            for tok in line.split_whitespace() {
                let at = offset + col + line[col..].find(tok).unwrap_or(0);
                let value = tok.parse::<usize>().map_err(|_| Error::Parse {
                    offset: at,
                    message: format!("expected a nonnegative integer, found {tok:?}"),
                })?;
                out.push((value, at));
                col = at - offset + tok.len();
            }
        }
        offset += line.len();
    }
    Ok(out)
}

fn pairs(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let nums = numbers(text)?;
    if nums.len() < 2 {
        return Err(Error::Parse {
            offset: text.len(),
            message: "missing `n m` header".into(),
        });
    }
    let (n, m) = (nums[0].0, nums[1].0);
    let body = &nums[2..];
    if body.len() != 2 * m {
        let offset = body.get(2 * m).map_or(text.len(), |&(_, at)| at);
        return Err(Error::Parse {
            offset,
            message: format!("header announces {m} edges, found {} numbers", body.len()),
        });
    }
    let mut out = Vec::with_capacity(m);
    for chunk in body.chunks(2) {
        let (a, b) = (chunk[0], chunk[1]);
        for &(v, at) in &[a, b] {
            if v >= n {
                return Err(Error::Parse {
                    offset: at,
                    message: format!("vertex {v} outside 0..{n}"),
                });
            }
        }
        if a.0 == b.0 {
            return Err(Error::Parse {
                offset: a.1,
                message: format!("self-loop at vertex {}", a.0),
            });
        }
        out.push((a.0, b.0));
    }
    Ok((n, out))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let (n, pairs) = pairs(text)?;
    Graph::from_edges(n, pairs)
}

/// Same layout as the edge list, each line read as an arc `tail head`.
pub fn parse_arc_list(text: &str) -> Result<Orientation> {
    let (n, pairs) = pairs(text)?;
    Orientation::from_arcs(n, pairs.into_iter().map(|(t, h)| Arc::new(t, h)))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        s.push_str(&format!("{} {}\n", e.lo(), e.hi()));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn round_trip() {
        let g = named::petersen();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_edge_list("# triangle\n3 3\n\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g, named::complete(3));
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_edge_list("3 1\n0 x\n") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        match parse_edge_list("3 1\n0 3\n") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n1 1\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn arc_list_keeps_direction() {
        let d = parse_arc_list("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(d.arcs()[0], Arc::new(0, 1));
        assert!((0..3).all(|v| d.out_degree(v) == 1));
        assert!(parse_arc_list("2 2\n0 1\n1 0\n").is_err());
    }
}
