//! Clique-sum decomposition of K3,3-minor-free graphs (and, with
//! [`Family::K33e`], of (K3,3+e)-minor-free graphs).
//!
//! Components are split off first (0-sums), then the lowest cut vertex
//! (1-sums), then the lexicographically least separating pair (2-sums, with
//! the pair's edge added to every side). A piece without a cut of size at
//! most two is a leaf and must be `K5`, `K3,3` (family `k33e` only) or
//! planar; otherwise the piece is returned as the rejection witness.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, Witness};
use crate::graph::{write_graph6, Edge, Graph};
use crate::planar::{planar_embed, Planarity, PlaneEmbedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    K33,
    K33e,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::K33 => "k33",
            Family::K33e => "k33e",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "k33" => Ok(Family::K33),
            "k33e" => Ok(Family::K33e),
            other => Err(format!("unknown family {other:?} (expected k33 or k33e)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceLabel {
    Planar(PlaneEmbedding),
    K5,
    K33,
}

impl PieceLabel {
    pub fn name(&self) -> &'static str {
        match self {
            PieceLabel::Planar(_) => "planar",
            PieceLabel::K5 => "k5",
            PieceLabel::K33 => "k33",
        }
    }
}

/// A leaf of the decomposition: a graph on local ids `0..k` and the map
/// from local ids to ids of the decomposed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub label: PieceLabel,
    pub graph: Graph,
    pub vertex_map: Vec<usize>,
}

impl Piece {
    pub fn local_of(&self, v: usize) -> Option<usize> {
        self.vertex_map.iter().position(|&x| x == v)
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertex_map.contains(&v)
    }

    /// Whether the piece has the edge `ab`, given in outer ids.
    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        match (self.local_of(a), self.local_of(b)) {
            (Some(x), Some(y)) => self.graph.has_edge(x, y),
            _ => false,
        }
    }

    /// Edges in outer ids.
    pub fn outer_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.graph.edges().iter().map(|e| e.map(|v| self.vertex_map[v]))
    }
}

/// A tree edge: pieces `nodes.0` and `nodes.1` share the clique `vertices`
/// (outer ids; each piece maps them through its own `vertex_map`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumJoint {
    pub nodes: (usize, usize),
    pub vertices: Vec<usize>,
    /// For a 2-sum: whether the clique edge is an edge of the input graph.
    pub real_edge: bool,
}

impl SumJoint {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// The identification map as pairs of local ids `(in nodes.0, in nodes.1)`.
    pub fn identification(&self, tree: &DecompositionTree) -> Vec<(usize, usize)> {
        let (a, b) = (&tree.nodes[self.nodes.0], &tree.nodes[self.nodes.1]);
        self.vertices
            .iter()
            .map(|&v| (a.local_of(v).expect("joint vertex"), b.local_of(v).expect("joint vertex")))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTree {
    pub family: Family,
    pub n: usize,
    pub nodes: Vec<Piece>,
    pub joints: Vec<SumJoint>,
}

impl DecompositionTree {
    /// Union of all pieces with the virtual clique edges dropped.
    pub fn reglue(&self) -> Graph {
        let virtual_edges: BTreeSet<Edge> = self
            .joints
            .iter()
            .filter(|j| j.size() == 2 && !j.real_edge)
            .map(|j| Edge::new(j.vertices[0], j.vertices[1]))
            .collect();
        let edges: BTreeSet<Edge> = self
            .nodes
            .iter()
            .flat_map(Piece::outer_edges)
            .filter(|e| !virtual_edges.contains(e))
            .collect();
        Graph::from_edges(self.n, edges.into_iter().map(Edge::endpoints)).expect("pieces stay in range")
    }

    /// Neighboring `(node, joint index)` pairs of `node`.
    pub fn adjacent(&self, node: usize) -> Vec<(usize, usize)> {
        self.joints
            .iter()
            .enumerate()
            .filter_map(|(j, joint)| match joint.nodes {
                (a, b) if a == node => Some((b, j)),
                (a, b) if b == node => Some((a, j)),
                _ => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let nodes = self
            .nodes
            .iter()
            .map(|p| {
                Ok(serde_json::json!({
                    "kind": p.label.name(),
                    "graph": write_graph6(&p.graph)?,
                    "vertex_map": p.vertex_map,
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        let joints: Vec<_> = self
            .joints
            .iter()
            .map(|j| {
                serde_json::json!({
                    "nodes": [j.nodes.0, j.nodes.1],
                    "size": j.size(),
                    "vertices": j.vertices,
                    "real_edge": j.real_edge,
                })
            })
            .collect();
        Ok(serde_json::json!({
            "family": self.family,
            "n": self.n,
            "nodes": nodes,
            "joints": joints,
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Tree(DecompositionTree),
    Rejected(Witness),
}

impl Decomposition {
    pub fn tree(self) -> Option<DecompositionTree> {
        match self {
            Decomposition::Tree(t) => Some(t),
            Decomposition::Rejected(_) => None,
        }
    }
}

pub fn is_k5(g: &Graph) -> bool {
    g.n() == 5 && g.m() == 10
}

/// `K3,3` exactly: six vertices, nine edges, bipartite.
pub fn is_k33(g: &Graph) -> bool {
    g.n() == 6 && g.m() == 9 && bipartition(g).is_some()
}

/// Two-colouring with vertex 0's side first, if the graph is bipartite.
pub(crate) fn bipartition(g: &Graph) -> Option<Vec<u8>> {
    let mut side = vec![u8::MAX; g.n()];
    for s in g.vertices() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if side[y] == u8::MAX {
                    side[y] = 1 - side[x];
                    stack.push(y);
                } else if side[y] == side[x] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

fn lowest_cut_vertex(h: &Graph) -> Option<usize> {
    if h.n() < 3 {
        return None;
    }
    h.vertices().find(|&x| h.components_avoiding(&[x]).len() > 1)
}

fn least_separating_pair(h: &Graph) -> Option<(usize, usize)> {
    if h.n() < 4 {
        return None;
    }
    (0..h.n())
        .flat_map(|a| (a + 1..h.n()).map(move |b| (a, b)))
        .find(|&(a, b)| h.components_avoiding(&[a, b]).len() > 1)
}

struct Builder<'a> {
    input: &'a Graph,
    family: Family,
    nodes: Vec<Piece>,
    joints: Vec<SumJoint>,
}

impl Builder<'_> {
    /// Decomposes the connected graph `h` whose vertex `i` is `map[i]` in
    /// the input. Returns the indices of the nodes created.
    fn connected(&mut self, h: &Graph, map: &[usize]) -> std::result::Result<Vec<usize>, Witness> {
        if let Some(x) = lowest_cut_vertex(h) {
            let mut created = Vec::new();
            let mut anchors = Vec::new();
            for comp in h.components_avoiding(&[x]) {
                let mut keep = comp;
                keep.push(x);
                keep.sort_unstable();
                let (sub, local) = h.induced(&keep);
                let sub_map: Vec<usize> = local.iter().map(|&v| map[v]).collect();
                let made = self.connected(&sub, &sub_map)?;
                anchors.push(self.first_with_vertex(&made, map[x]));
                created.extend(made);
            }
            for &a in &anchors[1..] {
                self.joints.push(SumJoint {
                    nodes: (anchors[0], a),
                    vertices: vec![map[x]],
                    real_edge: false,
                });
            }
            return Ok(created);
        }
        if let Some((a, b)) = least_separating_pair(h) {
            let mut created = Vec::new();
            let mut anchors = Vec::new();
            let (ga, gb) = (map[a], map[b]);
            for comp in h.components_avoiding(&[a, b]) {
                let mut keep = comp;
                keep.extend([a, b]);
                keep.sort_unstable();
                let (sub, local) = h.induced(&keep);
                let la = local.iter().position(|&v| v == a).unwrap();
                let lb = local.iter().position(|&v| v == b).unwrap();
                let sub = sub.with_edge(Edge::new(la, lb));
                let sub_map: Vec<usize> = local.iter().map(|&v| map[v]).collect();
                let made = self.connected(&sub, &sub_map)?;
                anchors.push(self.first_with_edge(&made, ga, gb));
                created.extend(made);
            }
            let real_edge = self.input.has_edge(ga, gb);
            for &n in &anchors[1..] {
                self.joints.push(SumJoint {
                    nodes: (anchors[0], n),
                    vertices: vec![ga.min(gb), ga.max(gb)],
                    real_edge,
                });
            }
            return Ok(created);
        }
        let label = if is_k5(h) {
            PieceLabel::K5
        } else if self.family == Family::K33e && is_k33(h) {
            PieceLabel::K33
        } else {
            match planar_embed(h).expect("connected, nonempty") {
                Planarity::Planar(e) => PieceLabel::Planar(e),
                Planarity::NonPlanar(_) => {
                    return Err(Witness {
                        graph: h.clone(),
                        vertex_map: map.to_vec(),
                    })
                }
            }
        };
        self.nodes.push(Piece {
            label,
            graph: h.clone(),
            vertex_map: map.to_vec(),
        });
        Ok(vec![self.nodes.len() - 1])
    }

    fn first_with_vertex(&self, made: &[usize], v: usize) -> usize {
        *made
            .iter()
            .find(|&&i| self.nodes[i].contains_vertex(v))
            .expect("the cut vertex lies in some piece")
    }

    fn first_with_edge(&self, made: &[usize], a: usize, b: usize) -> usize {
        *made
            .iter()
            .find(|&&i| self.nodes[i].contains_edge(a, b))
            .expect("the separating pair's edge lies in some piece")
    }
}

/// Builds the decomposition tree of `g`, or returns the first leaf piece
/// that is not allowed in `family`.
pub fn decompose(g: &Graph, family: Family) -> Decomposition {
    let mut b = Builder {
        input: g,
        family,
        nodes: Vec::new(),
        joints: Vec::new(),
    };
    let mut anchors = Vec::new();
    for comp in g.components() {
        let (h, map) = g.induced(&comp);
        match b.connected(&h, &map) {
            Ok(made) => anchors.push(made[0]),
            Err(w) => return Decomposition::Rejected(w),
        }
    }
    for i in 1..anchors.len() {
        b.joints.push(SumJoint {
            nodes: (anchors[0], anchors[i]),
            vertices: Vec::new(),
            real_edge: false,
        });
    }
    Decomposition::Tree(DecompositionTree {
        family,
        n: g.n(),
        nodes: b.nodes,
        joints: b.joints,
    })
}

pub fn is_k33_minor_free(g: &Graph) -> bool {
    matches!(decompose(g, Family::K33), Decomposition::Tree(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn tree(g: &Graph, family: Family) -> DecompositionTree {
        decompose(g, family).tree().expect("decomposes")
    }

    #[test]
    fn two_k5_sharing_an_edge() {
        let g = named::two_k5_sharing_edge();
        let t = tree(&g, Family::K33);
        assert_eq!(t.nodes.len(), 2);
        assert!(t.nodes.iter().all(|p| p.label == PieceLabel::K5));
        assert_eq!(t.joints.len(), 1);
        assert_eq!(t.joints[0].vertices, vec![0, 1]);
        assert!(t.joints[0].real_edge);
        assert_eq!(t.reglue(), g);
        assert!(is_k33_minor_free(&g));
    }

    #[test]
    fn planar_graphs_decompose_into_planar_leaves() {
        for g in [named::cube(), named::wheel(5), named::cycle(6), named::path(4)] {
            let t = tree(&g, Family::K33);
            assert!(t.nodes.iter().all(|p| matches!(p.label, PieceLabel::Planar(_))));
            assert_eq!(t.reglue(), g);
        }
        // a 3-connected planar graph is a single leaf
        assert_eq!(tree(&named::octahedron(), Family::K33).nodes.len(), 1);
    }

    #[test]
    fn cycle_splits_with_virtual_edges() {
        let t = tree(&named::cycle(4), Family::K33);
        assert_eq!(t.nodes.len(), 2);
        assert_eq!(t.joints[0].vertices, vec![0, 2]);
        assert!(!t.joints[0].real_edge);
        for p in &t.nodes {
            assert!(p.contains_edge(0, 2));
        }
    }

    #[test]
    fn petersen_and_k33_rejections() {
        let p = named::petersen();
        match decompose(&p, Family::K33) {
            Decomposition::Rejected(w) => {
                assert_eq!(w.graph, p);
                assert_eq!(w.vertex_map, (0..10).collect::<Vec<_>>());
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(decompose(&p, Family::K33e), Decomposition::Rejected(_)));

        let k33 = named::complete_bipartite(3, 3);
        assert!(!is_k33_minor_free(&k33));
        let t = tree(&k33, Family::K33e);
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.nodes[0].label, PieceLabel::K33);
    }

    #[test]
    fn components_join_with_empty_joints() {
        let g = named::disjoint_union(&named::complete(5), &named::cycle(4));
        let g = named::disjoint_union(&g, &Graph::empty(1));
        let t = tree(&g, Family::K33);
        assert_eq!(t.reglue(), g);
        assert_eq!(t.joints.iter().filter(|j| j.size() == 0).count(), 2);
        assert!(t.nodes.iter().any(|p| p.graph.n() == 1));
        assert!(tree(&Graph::empty(0), Family::K33).nodes.is_empty());
    }

    #[test]
    fn k5_with_pendant_blocks() {
        // K5 on 0..5, triangle 4-5-6, pendant 6-7
        let mut pairs: Vec<(usize, usize)> = named::complete(5).edges().iter().map(|e| e.endpoints()).collect();
        pairs.extend([(4, 5), (5, 6), (4, 6), (6, 7)]);
        let g = Graph::from_edges(8, pairs).unwrap();
        let t = tree(&g, Family::K33);
        assert_eq!(t.reglue(), g);
        assert_eq!(t.nodes.iter().filter(|p| p.label == PieceLabel::K5).count(), 1);
        assert!(t.joints.iter().all(|j| j.size() == 1));
        for j in &t.joints {
            let pairs = j.identification(&t);
            let (a, b) = (&t.nodes[j.nodes.0], &t.nodes[j.nodes.1]);
            assert_eq!(a.vertex_map[pairs[0].0], b.vertex_map[pairs[0].1]);
        }
    }

    #[test]
    fn k33_and_k33e_trees_agree_when_both_exist() {
        let g = named::two_k5_sharing_edge();
        assert_eq!(tree(&g, Family::K33).nodes, tree(&g, Family::K33e).nodes);
    }
}
