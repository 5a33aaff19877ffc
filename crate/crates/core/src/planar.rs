//! Planarity testing with a rotation system as output.
//!
//! Each biconnected block is embedded with the fragment-and-face method of
//! Demoucron, Malgrange and Pertuiset: start from a cycle, then repeatedly
//! route a path of some fragment through a face that contains all of its
//! attachment vertices, preferring fragments with a single admissible face.
//! Block rotations are concatenated at cut vertices.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Edge count above which no Kuratowski subgraph is extracted.
const WITNESS_EDGE_CAP: usize = 200;

/// A combinatorial embedding: for every vertex, the cyclic order of its
/// neighbors, plus the index of the face treated as the infinite one.
///
/// Faces are traced with the rule "after the dart `p -> v` comes
/// `v -> rotation_successor(v, p)`".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneEmbedding {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    outer_face: usize,
}

/// The closed walk around one face, starting at `walk[0]`; the closing step
/// back to `walk[0]` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryWalk {
    pub face: usize,
    pub walk: Vec<usize>,
}

impl BoundaryWalk {
    /// Distinct vertices of the walk other than its first two, in order of
    /// first appearance.
    pub fn later_vertices(&self) -> Vec<usize> {
        let mut seen: BTreeSet<usize> = self.walk.iter().take(2).copied().collect();
        self.walk
            .iter()
            .skip(2)
            .copied()
            .filter(|v| seen.insert(*v))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    K5Subdivision,
    K33Subdivision,
    EmbeddingFailure,
}

/// Evidence of non-planarity: for the subdivision kinds, the branch vertices
/// and the edges of a subdivided `K5` or `K3,3` contained in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPlanarWitness {
    pub kind: WitnessKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Planarity {
    Planar(PlaneEmbedding),
    NonPlanar(NonPlanarWitness),
}

impl Planarity {
    pub fn embedding(self) -> Option<PlaneEmbedding> {
        match self {
            Planarity::Planar(e) => Some(e),
            Planarity::NonPlanar(_) => None,
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

impl PlaneEmbedding {
    /// Checks that `rotation` lists each vertex's neighbors exactly once and
    /// that the induced faces satisfy Euler's formula.
    pub fn from_rotation(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if !graph.is_connected() || graph.n() == 0 {
            return Err(Error::domain("embedding needs a connected graph with a vertex"));
        }
        if rotation.len() != graph.n() {
            return Err(Error::domain("rotation system has the wrong length"));
        }
        for v in graph.vertices() {
            let mut listed = rotation[v].clone();
            listed.sort_unstable();
            if listed != graph.neighbors(v) {
                return Err(Error::domain(format!("rotation at {v} is not its neighbor list")));
            }
        }
        let e = PlaneEmbedding {
            graph,
            rotation,
            outer_face: 0,
        };
        let f = e.faces().len();
        if e.graph.n() + f != e.graph.m() + 2 {
            return Err(Error::domain(format!(
                "rotation system is not planar: n={} m={} f={f}",
                e.graph.n(),
                e.graph.m()
            )));
        }
        Ok(e)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn with_outer_face(mut self, face: usize) -> Self {
        self.outer_face = face;
        self
    }

    fn successor(&self, v: usize, p: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&x| x == p).expect("p is a neighbor of v");
        rot[(i + 1) % rot.len()]
    }

    /// Face traversals; every dart is used exactly once. Faces are listed in
    /// the order their first dart appears when scanning vertices by id and
    /// each rotation in order.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        if self.graph.m() == 0 {
            return vec![vec![0]];
        }
        let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut faces = Vec::new();
        for v in self.graph.vertices() {
            for &w in &self.rotation[v] {
                if used.contains(&(v, w)) {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut b) = (v, w);
                while used.insert((a, b)) {
                    walk.push(a);
                    let c = self.successor(b, a);
                    a = b;
                    b = c;
                }
                faces.push(walk);
            }
        }
        faces
    }
}

/// Embeds a connected graph in the plane or reports why it cannot be.
pub fn planar_embed(g: &Graph) -> Result<Planarity> {
    if g.n() == 0 {
        return Err(Error::domain("planar_embed needs at least one vertex"));
    }
    if !g.is_connected() {
        return Err(Error::domain(
            "planar_embed needs a connected graph; split into components first",
        ));
    }
    match rotation_system(g) {
        Some(rotation) => Ok(Planarity::Planar(PlaneEmbedding::from_rotation(
            g.clone(),
            rotation,
        )?)),
        None => Ok(Planarity::NonPlanar(witness(g))),
    }
}

/// Planarity of an arbitrary graph, component by component.
pub fn is_planar(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        let (h, _) = g.induced(comp);
        rotation_system(&h).is_some()
    })
}

/// The faces of `e` through the edge `uv`, as a walk starting `u, v`: the
/// longest such face (lowest index on ties), read backwards if needed.
pub fn outer_walk_through_edge(e: &PlaneEmbedding, u: usize, v: usize) -> Result<BoundaryWalk> {
    if !e.graph.has_edge(u, v) {
        return Err(Error::domain(format!("{u}-{v} is not an edge")));
    }
    let faces = e.faces();
    let has_side = |f: &[usize], a: usize, b: usize| {
        (0..f.len()).any(|i| f[i] == a && f[(i + 1) % f.len()] == b)
    };
    let (idx, face) = faces
        .iter()
        .enumerate()
        .filter(|(_, f)| has_side(f, u, v) || has_side(f, v, u))
        .fold(None::<(usize, &Vec<usize>)>, |best, cand| match best {
            Some(b) if b.1.len() >= cand.1.len() => Some(b),
            _ => Some(cand),
        })
        .expect("every edge borders a face");
    let len = face.len();
    let walk = if let Some(i) = (0..len).find(|&i| face[i] == u && face[(i + 1) % len] == v) {
        (0..len).map(|k| face[(i + k) % len]).collect()
    } else {
        // traverse backwards: the face has the side v -> u at position i
        let i = (0..len)
            .find(|&i| face[i] == v && face[(i + 1) % len] == u)
            .expect("side present");
        let start = (i + 1) % len;
        (0..len).map(|k| face[(start + len - k) % len]).collect()
    };
    Ok(BoundaryWalk { face: idx, walk })
}

/// Rotation system for a connected graph, or `None` if it is not planar.
fn rotation_system(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for block in biconnected_blocks(g) {
        let local = embed_block(g, &block)?;
        for (v, order) in local {
            rotation[v].extend(order);
        }
    }
    Some(rotation)
}

/// Edge sets of the biconnected blocks (bridges are single-edge blocks).
fn biconnected_blocks(g: &Graph) -> Vec<Vec<Edge>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<Edge>,
        blocks: Vec<Vec<Edge>>,
    }
    fn dfs(s: &mut State, v: usize, parent: usize) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        for &w in s.g.neighbors(v) {
            if s.disc[w] == 0 {
                s.stack.push(Edge::new(v, w));
                dfs(s, w, v);
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] >= s.disc[v] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == Edge::new(v, w) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    s.blocks.push(block);
                }
            } else if w != parent && s.disc[w] < s.disc[v] {
                s.stack.push(Edge::new(v, w));
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }
    let mut s = State {
        g,
        disc: vec![0; g.n()],
        low: vec![0; g.n()],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in g.vertices() {
        if s.disc[v] == 0 {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.blocks
}

/// Embeds one biconnected block; returns each block vertex's rotation.
fn embed_block(g: &Graph, block: &[Edge]) -> Option<HashMap<usize, Vec<usize>>> {
    if block.len() == 1 {
        let (a, b) = block[0].endpoints();
        return Some(HashMap::from([(a, vec![b]), (b, vec![a])]));
    }
    let verts: BTreeSet<usize> = block.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
    let verts: Vec<usize> = verts.into_iter().collect();
    let (h, map) = g.induced(&verts);
    // a block's induced subgraph is the block itself
    debug_assert_eq!(h.m(), block.len());
    let faces = dmp_faces(&h)?;

    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); h.n()];
    for f in &faces {
        let len = f.len();
        for i in 0..len {
            let (p, v, q) = (f[(i + len - 1) % len], f[i], f[(i + 1) % len]);
            succ[v].insert(p, q);
        }
    }
    let mut out = HashMap::new();
    for v in h.vertices() {
        let start = h.neighbors(v)[0];
        let mut order = vec![start];
        let mut x = succ[v][&start];
        while x != start {
            order.push(x);
            x = succ[v][&x];
        }
        debug_assert_eq!(order.len(), h.degree(v));
        out.insert(map[v], order.into_iter().map(|w| map[w]).collect());
    }
    Some(out)
}

struct Fragment {
    attachments: BTreeSet<usize>,
    /// non-embedded vertices (empty for a single-edge fragment)
    inner: Vec<usize>,
    /// the edge, for a single-edge fragment
    edge: Option<Edge>,
}

/// Face cycles of a 2-connected planar graph, consistently oriented.
fn dmp_faces(h: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = h.n();
    let first = h.edges()[0];
    let cycle = {
        // shortest path from hi to lo avoiding the edge itself
        let (a, b) = first.endpoints();
        let mut prev = vec![usize::MAX; n];
        prev[b] = b;
        let mut queue = std::collections::VecDeque::from([b]);
        while let Some(x) = queue.pop_front() {
            for &y in h.neighbors(x) {
                if prev[y] == usize::MAX && !(x == b && y == a) {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![a];
        let mut x = a;
        while x != b {
            x = prev[x];
            path.push(x);
        }
        path
    };
    let mut embedded_v = vec![false; n];
    let mut embedded_e: BTreeSet<Edge> = BTreeSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        embedded_v[v] = true;
        embedded_e.insert(Edge::new(v, cycle[(i + 1) % cycle.len()]));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    while embedded_e.len() < h.m() {
        let fragments = fragments(h, &embedded_v, &embedded_e);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&k| frag.attachments.iter().all(|a| faces[k].contains(a)))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("some fragment remains");
        let path = fragment_path(h, &fragments[fi], &embedded_v);
        for w in path.windows(2) {
            embedded_e.insert(Edge::new(w[0], w[1]));
        }
        for &v in &path {
            embedded_v[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    Some(faces)
}

fn fragments(h: &Graph, embedded_v: &[bool], embedded_e: &BTreeSet<Edge>) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &e in h.edges() {
        if embedded_v[e.lo()] && embedded_v[e.hi()] && !embedded_e.contains(&e) {
            out.push(Fragment {
                attachments: [e.lo(), e.hi()].into(),
                inner: Vec::new(),
                edge: Some(e),
            });
        }
    }
    let placed: Vec<usize> = h.vertices().filter(|&v| embedded_v[v]).collect();
    for comp in h.components_avoiding(&placed) {
        let attachments = comp
            .iter()
            .flat_map(|&v| h.neighbors(v).iter().copied())
            .filter(|&w| embedded_v[w])
            .collect();
        out.push(Fragment {
            attachments,
            inner: comp,
            edge: None,
        });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(h: &Graph, frag: &Fragment, embedded_v: &[bool]) -> Vec<usize> {
    if let Some(e) = frag.edge {
        return vec![e.lo(), e.hi()];
    }
    let inner: BTreeSet<usize> = frag.inner.iter().copied().collect();
    let a = *frag.attachments.iter().next().expect("a 2-connected fragment has attachments");
    let entry = *h
        .neighbors(a)
        .iter()
        .find(|w| inner.contains(w))
        .expect("attachment touches the fragment");
    let mut prev: HashMap<usize, usize> = HashMap::from([(entry, entry)]);
    let mut queue = std::collections::VecDeque::from([entry]);
    while let Some(x) = queue.pop_front() {
        if let Some(&b) = h
            .neighbors(x)
            .iter()
            .find(|&&b| b != a && embedded_v[b])
        {
            let mut path = vec![b, x];
            let mut y = x;
            while y != entry {
                y = prev[&y];
                path.push(y);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &y in h.neighbors(x) {
            if inner.contains(&y) && !prev.contains_key(&y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    unreachable!("fragments of a 2-connected graph have two attachments")
}

/// Splits `face` by `path` (from `path[0]` to its last vertex, both on the
/// face), keeping every dart in exactly one face.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let len = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let arc = |from: usize, to: usize| {
        let mut out = vec![face[from]];
        let mut k = from;
        while k != to {
            k = (k + 1) % len;
            out.push(face[k]);
        }
        out
    };
    let mut f1 = arc(i, j);
    f1.extend(inner.iter().rev());
    let mut f2 = arc(j, i);
    f2.extend(inner.iter());
    (f1, f2)
}

/// Deletes edges one at a time while the rest stays non-planar, leaving a
/// minimal non-planar subgraph, which is a Kuratowski subdivision.
fn witness(g: &Graph) -> NonPlanarWitness {
    let failure = NonPlanarWitness {
        kind: WitnessKind::EmbeddingFailure,
        branch_vertices: Vec::new(),
        edges: Vec::new(),
    };
    if g.m() > WITNESS_EDGE_CAP {
        return failure;
    }
    let mut kept: BTreeSet<Edge> = g.edges().iter().copied().collect();
    for &e in g.edges() {
        kept.remove(&e);
        let h = Graph::from_edges(g.n(), kept.iter().map(|x| x.endpoints())).expect("subgraph");
        if is_planar(&h) {
            kept.insert(e);
        }
    }
    let h = Graph::from_edges(g.n(), kept.iter().map(|x| x.endpoints())).expect("subgraph");
    let branch: Vec<usize> = h.vertices().filter(|&v| h.degree(v) >= 3).collect();
    let kind = match (branch.len(), branch.iter().all(|&v| h.degree(v) == 4)) {
        (5, true) => WitnessKind::K5Subdivision,
        (6, _) if branch.iter().all(|&v| h.degree(v) == 3) => WitnessKind::K33Subdivision,
        _ => return failure,
    };
    NonPlanarWitness {
        kind,
        branch_vertices: branch,
        edges: kept.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn embed(g: &Graph) -> PlaneEmbedding {
        planar_embed(g).unwrap().embedding().expect("planar")
    }

    #[test]
    fn k4_has_four_faces() {
        assert_eq!(embed(&named::complete(4)).faces().len(), 4);
    }

    #[test]
    fn k5_and_k33_are_not_planar() {
        match planar_embed(&named::complete(5)).unwrap() {
            Planarity::NonPlanar(w) => {
                assert_eq!(w.kind, WitnessKind::K5Subdivision);
                assert_eq!(w.edges.len(), 10);
            }
            other => panic!("{other:?}"),
        }
        match planar_embed(&named::complete_bipartite(3, 3)).unwrap() {
            Planarity::NonPlanar(w) => assert_eq!(w.kind, WitnessKind::K33Subdivision),
            other => panic!("{other:?}"),
        }
        match planar_embed(&named::petersen()).unwrap() {
            Planarity::NonPlanar(w) => {
                assert_eq!(w.kind, WitnessKind::K33Subdivision);
                assert!(w.edges.iter().all(|e| named::petersen().contains_edge(*e)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tree_has_one_face() {
        let t = Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let f = embed(&t).faces();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].len(), 8);
    }

    #[test]
    fn face_examples() {
        let f = embed(&named::complete(3)).faces();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|w| w.len() == 3));

        let f = embed(&named::complete(2)).faces();
        assert_eq!(f, vec![vec![0, 1]]);

        let f = embed(&named::cycle(4)).faces();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|w| w.len() == 4));

        assert_eq!(embed(&Graph::empty(1)).faces(), vec![vec![0]]);
    }

    #[test]
    fn walk_through_edge_starts_with_it() {
        let e = embed(&named::complete(3));
        let w = outer_walk_through_edge(&e, 0, 1).unwrap();
        assert_eq!(w.walk, vec![0, 1, 2]);
        let w = outer_walk_through_edge(&e, 2, 0).unwrap();
        assert_eq!(w.walk, vec![2, 0, 1]);

        let e = embed(&named::cycle(4));
        assert_eq!(outer_walk_through_edge(&e, 0, 1).unwrap().walk, vec![0, 1, 2, 3]);
        assert_eq!(outer_walk_through_edge(&e, 1, 0).unwrap().walk, vec![1, 0, 3, 2]);

        let e = embed(&named::complete(4));
        for (u, v) in [(0, 1), (1, 0), (2, 3), (3, 1)] {
            let w = outer_walk_through_edge(&e, u, v).unwrap();
            assert_eq!(w.walk.len(), 3);
            assert_eq!(&w.walk[..2], &[u, v]);
            assert_eq!(e.faces()[w.face].len(), 3);
        }

        assert!(outer_walk_through_edge(&e, 0, 0).is_err());
        let e = embed(&named::path(3));
        assert!(outer_walk_through_edge(&e, 0, 2).is_err());
        let w = outer_walk_through_edge(&e, 0, 1).unwrap();
        assert_eq!(w.walk, vec![0, 1, 2, 1]);
        assert_eq!(w.later_vertices(), vec![2]);
    }

    #[test]
    fn disconnected_input_is_a_domain_error() {
        assert!(matches!(planar_embed(&Graph::empty(2)), Err(Error::Domain(_))));
        assert!(matches!(planar_embed(&Graph::empty(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn euler_holds_on_named_planar_graphs() {
        for g in [
            named::wheel(5),
            named::octahedron(),
            named::cube(),
            named::star(4),
            named::complete_bipartite(2, 5),
        ] {
            let e = embed(&g);
            assert_eq!(g.n() + e.faces().len(), g.m() + 2, "{g:?}");
        }
    }

    #[test]
    fn cut_vertices_merge_block_rotations() {
        // two triangles sharing vertex 0 plus a pendant edge
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (4, 5)]).unwrap();
        let e = embed(&g);
        assert_eq!(e.faces().len(), 3);
        assert_eq!(e.rotation(0).len(), 4);
    }

    #[test]
    fn rejects_bad_rotation() {
        let g = named::complete(4);
        let bad = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]];
        assert!(PlaneEmbedding::from_rotation(g, bad).is_err());
    }
}
