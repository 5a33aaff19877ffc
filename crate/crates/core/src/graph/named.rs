//! Small named graphs used by tests, the self-test and the examples.

use super::Graph;

pub fn complete(n: usize) -> Graph {
    let pairs = (0..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    Graph::from_edges(n, pairs).expect("valid")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let pairs = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)));
    Graph::from_edges(a + b, pairs).expect("valid")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid")
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid")
}

/// Wheel with hub 0 and rim `1..=rim`; `wheel(5)` is W5 on six vertices.
pub fn wheel(rim: usize) -> Graph {
    assert!(rim >= 3);
    let spokes = (1..=rim).map(|i| (0, i));
    let rim_edges = (1..=rim).map(|i| (i, i % rim + 1));
    Graph::from_edges(rim + 1, spokes.chain(rim_edges)).expect("valid")
}

/// `K_{2,2,2}`: vertex `i` is opposite `i + 3`.
pub fn octahedron() -> Graph {
    let pairs = (0..6).flat_map(|j| (0..j).map(move |i| (i, j)));
    Graph::from_edges(6, pairs.filter(|&(i, j)| j != i + 3)).expect("valid")
}

/// The 3-cube: vertices are 3-bit words, adjacent when they differ in one bit.
pub fn cube() -> Graph {
    let pairs = (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))));
    Graph::from_edges(8, pairs).expect("valid")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::from_edges(10, outer.chain(inner).chain(spokes)).expect("valid")
}

/// Two copies of `K5` sharing the edge `{0, 1}`: vertices `0..5` and
/// `{0, 1, 5, 6, 7}`. Nine vertices, nineteen edges.
pub fn two_k5_sharing_edge() -> Graph {
    let first = [0, 1, 2, 3, 4];
    let second = [0, 1, 5, 6, 7];
    let mut pairs = Vec::new();
    for side in [first, second] {
        for j in 0..5 {
            for i in 0..j {
                pairs.push((side[i], side[j]));
            }
        }
    }
    Graph::from_edges(8, pairs).expect("valid")
}

/// Disjoint union; the second graph's ids are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    let pairs = a
        .edges()
        .iter()
        .map(|e| e.endpoints())
        .chain(b.edges().iter().map(|e| (e.lo() + shift, e.hi() + shift)));
    Graph::from_edges(a.n() + b.n(), pairs).expect("valid")
}
