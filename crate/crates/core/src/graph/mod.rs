//! Simple undirected graphs on dense vertex ids, edge subsets with a role,
//! orientations, and the small structural predicates shared by every other
//! module.

mod edgelist;
mod graph6;
pub mod named;
mod orientation;

pub use edgelist::{parse_arc_list, parse_edge_list, write_edge_list};
pub use graph6::{parse_graph6, write_graph6, GRAPH6_MAX_N};
pub use orientation::{Arc, Orientation};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected edge, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Edge(usize, usize);

impl Edge {
    /// Panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop {a}-{a}");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn try_new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::domain(format!("self-loop at vertex {a}")));
        }
        Ok(Edge::new(a, b))
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint other than `v`.
    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }

    pub fn map(self, f: impl Fn(usize) -> usize) -> Edge {
        Edge::new(f(self.0), f(self.1))
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = String;

    fn try_from([a, b]: [usize; 2]) -> std::result::Result<Self, Self::Error> {
        if a == b {
            Err(format!("self-loop {a}-{b}"))
        } else {
            Ok(Edge::new(a, b))
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are kept sorted and deduplicated; adjacency lists are sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}-{}", e.0, e.1)?;
        }
        write!(f, "])")
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from unordered pairs. Repeated pairs collapse into one
    /// edge; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::domain(format!(
                    "edge {a}-{b} has an endpoint outside 0..{n}"
                )));
            }
            set.insert(Edge::try_new(a, b)?);
        }
        Ok(Self::from_edge_set(n, set))
    }

    fn from_edge_set(n: usize, set: BTreeSet<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &set {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges: set.into_iter().collect(),
            adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    /// Index of `e` in [`Graph::edges`].
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn with_edge(&self, e: Edge) -> Graph {
        let mut set: BTreeSet<Edge> = self.edges.iter().copied().collect();
        set.insert(e);
        Self::from_edge_set(self.n, set)
    }

    pub fn without_edges(&self, removed: &BTreeSet<Edge>) -> Graph {
        let set = self
            .edges
            .iter()
            .copied()
            .filter(|e| !removed.contains(e))
            .collect();
        Self::from_edge_set(self.n, set)
    }

    /// Subgraph induced on `keep` (in the given order). Returns the subgraph
    /// and the map from its ids to ids of `self`.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let set = self
            .edges
            .iter()
            .filter(|e| local[e.0] != usize::MAX && local[e.1] != usize::MAX)
            .map(|e| Edge::new(local[e.0], local[e.1]))
            .collect();
        (Self::from_edge_set(keep.len(), set), keep.to_vec())
    }

    /// Applies `perm` (old id -> new id).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let set = self.edges.iter().map(|e| e.map(|v| perm[v])).collect();
        Self::from_edge_set(self.n, set)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&[])
    }

    /// Components of the graph with the vertices in `removed` deleted.
    pub fn components_avoiding(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        for &r in removed {
            seen[r] = true;
        }
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Vertices in breadth-first order from `root`, neighbors visited in
    /// increasing id order. Only the component of `root` is listed.
    pub fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[root] = true;
        let mut order = vec![root];
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
        order
    }
}

/// What an [`EdgeSet`] is claimed to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeRole {
    Generic,
    Matching,
    Forest,
}

/// A subset of a graph's edges. Construction checks membership and the
/// invariant implied by the role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    role: EdgeRole,
    members: BTreeSet<Edge>,
}

impl EdgeSet {
    pub fn new<I>(g: &Graph, members: I, role: EdgeRole) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let members: BTreeSet<Edge> = members.into_iter().collect();
        check_members(g, &members)?;
        let ok = match role {
            EdgeRole::Generic => true,
            EdgeRole::Matching => matching_property(&members),
            EdgeRole::Forest => forest_property(g.n(), &members),
        };
        if !ok {
            return Err(Error::domain(format!(
                "edge set is not a {}",
                if role == EdgeRole::Matching {
                    "matching"
                } else {
                    "forest"
                }
            )));
        }
        Ok(EdgeSet { role, members })
    }

    pub fn generic<I>(g: &Graph, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        Self::new(g, members, EdgeRole::Generic)
    }

    pub fn none(role: EdgeRole) -> Self {
        EdgeSet {
            role,
            members: BTreeSet::new(),
        }
    }

    pub fn role(&self) -> EdgeRole {
        self.role
    }

    pub fn members(&self) -> &BTreeSet<Edge> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.members.contains(&e)
    }

    /// Number of members incident to `v`.
    pub fn degree_of(&self, v: usize) -> usize {
        self.members.iter().filter(|e| e.contains(v)).count()
    }
}

fn check_members(g: &Graph, members: &BTreeSet<Edge>) -> Result<()> {
    match members.iter().find(|e| !g.contains_edge(**e)) {
        Some(e) => Err(Error::domain(format!("{}-{} is not an edge", e.0, e.1))),
        None => Ok(()),
    }
}

fn matching_property(members: &BTreeSet<Edge>) -> bool {
    let mut used = BTreeSet::new();
    members.iter().all(|e| used.insert(e.0) && used.insert(e.1))
}

fn forest_property(n: usize, members: &BTreeSet<Edge>) -> bool {
    let mut dsu = DisjointSets::new(n);
    members.iter().all(|e| dsu.union(e.0, e.1))
}

/// True iff no two edges of `s` share an endpoint.
pub fn is_matching(g: &Graph, s: &EdgeSet) -> Result<bool> {
    check_members(g, &s.members)?;
    Ok(matching_property(&s.members))
}

/// True iff `(V(g), s)` has no cycle.
pub fn is_forest(g: &Graph, s: &EdgeSet) -> Result<bool> {
    check_members(g, &s.members)?;
    Ok(forest_property(g.n(), &s.members))
}

/// Smallest `k` such that every subgraph has a vertex of degree at most `k`,
/// by repeatedly deleting a vertex of minimum degree.
pub fn degeneracy(g: &Graph) -> usize {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut gone = vec![false; g.n()];
    let mut best = 0;
    for _ in 0..g.n() {
        let v = (0..g.n())
            .filter(|&v| !gone[v])
            .min_by_key(|&v| deg[v])
            .expect("a vertex remains");
        best = best.max(deg[v]);
        gone[v] = true;
        for &w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
            }
        }
    }
    best
}

/// Union-find with path halving; `union` reports whether the two elements
/// were in different sets.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
