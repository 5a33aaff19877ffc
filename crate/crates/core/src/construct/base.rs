use super::{Evidence, Level, PieceCertificate};
use crate::decompose::{bipartition, is_k33, is_k5};
use crate::error::{Error, Result};
use crate::graph::{Arc, Edge, Graph};

fn check_pin(piece: &Graph, u: usize, v: usize) -> Result<()> {
    if u >= piece.n() || v >= piece.n() || !piece.has_edge(u, v) {
        return Err(Error::domain(format!("{u}-{v} is not an edge of the piece")));
    }
    Ok(())
}

/// `K5` on `v1 = u, v2 = v` and the other three vertices in ascending order;
/// every kept edge points from the higher to the lower position.
pub fn k5_base(piece: &Graph, level: Level, u: usize, v: usize) -> Result<PieceCertificate> {
    if !is_k5(piece) {
        return Err(Error::domain("piece is not K5"));
    }
    check_pin(piece, u, v)?;
    let mut order = vec![u, v];
    order.extend(piece.vertices().filter(|&w| w != u && w != v));
    let removed_pos: &[(usize, usize)] = match level {
        Level::Five => &[],
        Level::Four => &[(0, 1), (3, 4)],
        Level::Three => &[(0, 1), (2, 4), (1, 3), (3, 4)],
    };
    let removed: Vec<Edge> = removed_pos.iter().map(|&(i, j)| Edge::new(order[i], order[j])).collect();
    let mut arcs = Vec::new();
    for j in 0..5 {
        for i in 0..j {
            if !removed_pos.contains(&(i, j)) {
                arcs.push(Arc::new(order[j], order[i]));
            }
        }
    }
    PieceCertificate::single("k5", piece, level, (u, v), removed, arcs, Evidence::for_acyclic(level))
}

/// `K3,3` with `u = u1` on one side and `v = v1` on the other, the remaining
/// vertices of each side numbered in ascending order.
pub fn k33_base(piece: &Graph, level: Level, u: usize, v: usize) -> Result<PieceCertificate> {
    if !is_k33(piece) {
        return Err(Error::domain("piece is not K3,3"));
    }
    check_pin(piece, u, v)?;
    let side = bipartition(piece).expect("K3,3 is bipartite");
    let mut us = vec![u];
    us.extend(piece.vertices().filter(|&w| w != u && side[w] == side[u]));
    let mut vs = vec![v];
    vs.extend(piece.vertices().filter(|&w| w != v && side[w] == side[v]));
    // (tail, head) with 'u'/'v' naming the side and 1-based indices
    let pick = |s: char, i: usize| if s == 'u' { us[i - 1] } else { vs[i - 1] };
    let arc = |(ts, ti, hs, hi): (char, usize, char, usize)| Arc::new(pick(ts, ti), pick(hs, hi));
    let (arcs, removed): (Vec<Arc>, Vec<Edge>) = match level {
        Level::Five => {
            let mut arcs: Vec<Arc> = [2, 3]
                .iter()
                .flat_map(|&i| (1..=3).map(move |j| ('v', i, 'u', j)))
                .map(arc)
                .collect();
            arcs.extend([('v', 1, 'u', 1), ('u', 2, 'v', 1), ('u', 3, 'v', 1)].map(arc));
            (arcs, Vec::new())
        }
        Level::Four => (
            [
                ('v', 2, 'u', 1),
                ('v', 3, 'u', 1),
                ('u', 2, 'v', 1),
                ('u', 2, 'v', 3),
                ('u', 3, 'v', 1),
                ('u', 3, 'v', 2),
            ]
            .map(arc)
            .to_vec(),
            (1..=3).map(|i| Edge::new(pick('u', i), pick('v', i))).collect(),
        ),
        Level::Three => (
            [('v', 3, 'u', 1), ('u', 2, 'v', 1), ('u', 3, 'v', 1), ('u', 3, 'v', 2)]
                .map(arc)
                .to_vec(),
            [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)]
                .iter()
                .map(|&(i, j)| Edge::new(pick('u', i), pick('v', j)))
                .collect(),
        ),
    };
    PieceCertificate::single("k33", piece, level, (u, v), removed, arcs, Evidence::for_acyclic(level))
}
