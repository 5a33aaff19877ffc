//! Bounded out-degree AT-orientations for K3,3-minor-free graphs.
//!
//! A [`PieceCertificate`] at [`Level::Five`] is an orientation with maximum
//! out-degree at most 4, `d+(u) = 0`, `d+(v) = 1` for a pinned edge `uv`,
//! and a nonzero even/odd Eulerian difference. [`Level::Four`] first deletes
//! a matching and asks for out-degree at most 3 with `d+(u) = d+(v) = 0`;
//! [`Level::Three`] deletes a forest and asks for an acyclic orientation
//! with out-degree at most 2 and the same pinned sinks.
//!
//! [`construct`] peels leaf pieces off the decomposition tree one at a time:
//! the rest of the graph is built recursively around the pinned edge, the
//! peeled piece is built pinned at its joint, and the two are glued by
//! [`compose_cliquesum`].

mod base;
mod search;

pub use base::{k33_base, k5_base};
pub use crate::level::Level;
pub use search::{planar_base, planar_base_with, SearchLimits};

use std::collections::BTreeSet;

use crate::certify::Certificate;
use crate::decompose::{decompose, Decomposition, DecompositionTree, Family, Piece, PieceLabel};
use crate::error::{Error, Result, Witness};
use crate::graph::{Arc, Edge, EdgeRole, EdgeSet, Graph, Orientation};
use crate::oracle::{arcs_acyclic, DiffResult};

/// Why a piece's orientation has `|EE| != |OE|` (or is acyclic, at level 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    Diff(DiffResult),
    Acyclic,
}

impl Evidence {
    fn for_acyclic(level: Level) -> Self {
        match level {
            Level::Three => Evidence::Acyclic,
            _ => Evidence::Diff(DiffResult::acyclic()),
        }
    }

    pub fn diff(&self) -> Option<DiffResult> {
        match self {
            Evidence::Diff(d) => Some(*d),
            Evidence::Acyclic => None,
        }
    }
}

/// One leaf of a construction, in the ids of the certificate holding it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub kind: &'static str,
    pub graph: Graph,
    pub vertex_map: Vec<usize>,
    /// The clique this piece was glued along, ordered so that the `i`-th
    /// vertex has out-degree `i` in the piece; empty for a root piece.
    pub joint: Vec<usize>,
    /// Orientation of the whole piece, joint clique included.
    pub arcs: Vec<Arc>,
    pub removed: Vec<Edge>,
    pub evidence: Evidence,
}

impl TraceEntry {
    fn remap(&self, map: &[usize]) -> TraceEntry {
        TraceEntry {
            kind: self.kind,
            graph: self.graph.clone(),
            vertex_map: self.vertex_map.iter().map(|&v| map[v]).collect(),
            joint: self.joint.iter().map(|&v| map[v]).collect(),
            arcs: self.arcs.iter().map(|a| a.map(|v| map[v])).collect(),
            removed: self.removed.iter().map(|e| e.map(|v| map[v])).collect(),
            evidence: self.evidence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceCertificate {
    pub level: Level,
    pub pinned: Option<(usize, usize)>,
    /// Orientation of the piece minus the removed matching or forest.
    pub orientation: Orientation,
    pub evidence: Evidence,
    pub trace: Vec<TraceEntry>,
}

impl PieceCertificate {
    pub fn piece(&self) -> &Graph {
        self.orientation.base()
    }

    pub fn removed(&self) -> &EdgeSet {
        self.orientation.removed()
    }

    /// Certificate of a single piece; checks the level contract.
    fn single(
        kind: &'static str,
        piece: &Graph,
        level: Level,
        pinned: (usize, usize),
        removed: Vec<Edge>,
        arcs: Vec<Arc>,
        evidence: Evidence,
    ) -> Result<Self> {
        let role = level.removed_role().unwrap_or(EdgeRole::Generic);
        let removed_set = EdgeSet::new(piece, removed.iter().copied(), role)
            .map_err(|e| Error::Inconsistency(format!("{kind} piece: {e}")))?;
        let orientation = Orientation::new(piece.clone(), removed_set, arcs.clone())?;
        let c = PieceCertificate {
            level,
            pinned: Some(pinned),
            orientation,
            evidence,
            trace: vec![TraceEntry {
                kind,
                graph: piece.clone(),
                vertex_map: piece.vertices().collect(),
                joint: Vec::new(),
                arcs,
                removed,
                evidence,
            }],
        };
        c.check_contract()?;
        Ok(c)
    }

    fn empty(g: &Graph, level: Level) -> Self {
        let role = level.removed_role().unwrap_or(EdgeRole::Generic);
        PieceCertificate {
            level,
            pinned: None,
            orientation: Orientation::new(g.clone(), EdgeSet::none(role), Vec::new())
                .expect("edgeless graph"),
            evidence: Evidence::for_acyclic(level),
            trace: Vec::new(),
        }
    }

    /// Degree caps, pinned degrees and removed-set role for this level.
    pub fn check_contract(&self) -> Result<()> {
        let d = &self.orientation;
        if d.max_out_degree() > self.level.out_cap() {
            return Err(Error::Inconsistency(format!(
                "level {} orientation has out-degree {}",
                self.level,
                d.max_out_degree()
            )));
        }
        if let Some((u, v)) = self.pinned {
            let want = self.level.pinned_degrees();
            if (d.out_degree(u), d.out_degree(v)) != want {
                return Err(Error::Inconsistency(format!(
                    "pinned ({u},{v}) has out-degrees ({}, {}), want {want:?}",
                    d.out_degree(u),
                    d.out_degree(v)
                )));
            }
        }
        if self.level == Level::Five && !d.removed().is_empty() {
            return Err(Error::Inconsistency("level 5 removes no edges".into()));
        }
        if self.level == Level::Three && !arcs_acyclic(d.n(), d.arcs()) {
            return Err(Error::Inconsistency("level 3 orientation has a cycle".into()));
        }
        Ok(())
    }
}

/// Build the certificate for a single piece, pinned at `(u, v)` in the
/// piece's local ids.
pub fn piece_base(piece: &Piece, level: Level, u: usize, v: usize, limits: &SearchLimits) -> Result<PieceCertificate> {
    match &piece.label {
        PieceLabel::K5 => k5_base(&piece.graph, level, u, v),
        PieceLabel::K33 => k33_base(&piece.graph, level, u, v),
        PieceLabel::Planar(e) => planar_base_with(e, level, u, v, limits),
    }
}

/// Adds the arc `(y, x)` on the removed edge `xy`, whose endpoints are both
/// sinks. Afterwards `d+(x) = 0` and `d+(y) = 1`.
pub fn promote_edge(c: &PieceCertificate, x: usize, y: usize) -> Result<PieceCertificate> {
    if c.level == Level::Five {
        return Err(Error::domain("promotion applies to levels 4 and 3"));
    }
    let xy = Edge::try_new(x, y)?;
    if !c.removed().contains(xy) {
        return Err(Error::domain(format!("{x}-{y} is not a removed edge")));
    }
    let d = &c.orientation;
    if d.out_degree(x) != 0 || d.out_degree(y) != 0 {
        return Err(Error::domain(format!(
            "promotion needs d+({x}) = d+({y}) = 0, found {} and {}",
            d.out_degree(x),
            d.out_degree(y)
        )));
    }
    let role = c.level.removed_role().expect("levels 4 and 3 remove edges");
    let removed = EdgeSet::new(
        d.base(),
        d.removed().members().iter().copied().filter(|&e| e != xy),
        role,
    )?;
    let mut arcs = d.arcs().to_vec();
    arcs.push(Arc::new(y, x));
    let orientation = Orientation::new(d.base().clone(), removed, arcs)?;
    if c.level == Level::Three && !arcs_acyclic(orientation.n(), orientation.arcs()) {
        return Err(Error::Inconsistency("promotion created a cycle".into()));
    }
    let mut trace = c.trace.clone();
    let entry = trace
        .iter_mut()
        .find(|t| t.removed.contains(&xy))
        .ok_or_else(|| Error::Inconsistency(format!("no trace piece removes {xy}")))?;
    entry.removed.retain(|&e| e != xy);
    entry.arcs.push(Arc::new(y, x));
    Ok(PieceCertificate {
        level: c.level,
        pinned: Some((x, y)),
        orientation,
        evidence: c.evidence,
        trace,
    })
}

/// How two certificates are glued: ids of each side in the glued graph, and
/// the shared clique ordered `v1, ..., vk`.
#[derive(Debug, Clone)]
pub struct CliqueSum {
    pub graph: Graph,
    pub left_map: Vec<usize>,
    pub right_map: Vec<usize>,
    pub clique: Vec<usize>,
}

/// Union of two arc sets along a clique sum: everything from the left side,
/// and everything from the right side except arcs inside the clique.
///
/// Requires `d+(v_i) = i - 1` on the right side and checks that the union
/// covers the glued graph's edges exactly once.
pub fn compose_orientations(left: &Orientation, right: &Orientation, sum: &CliqueSum) -> Result<Orientation> {
    if left.n() != sum.left_map.len() || right.n() != sum.right_map.len() {
        return Err(Error::domain("clique-sum maps do not match the pieces"));
    }
    let right_local = |v: usize| sum.right_map.iter().position(|&x| x == v);
    let clique_local: Vec<usize> = sum
        .clique
        .iter()
        .map(|&v| right_local(v).ok_or_else(|| Error::domain(format!("clique vertex {v} is not on the right side"))))
        .collect::<Result<_>>()?;
    for (i, &a) in clique_local.iter().enumerate() {
        if right.out_degree(a) != i {
            return Err(Error::domain(format!(
                "joint ladder fails: d+({}) = {}, want {i}",
                sum.clique[i],
                right.out_degree(a)
            )));
        }
        for &b in &clique_local[..i] {
            if !right.has_arc(a, b) {
                return Err(Error::domain(format!(
                    "clique edge {}-{} is not oriented toward the lower rank",
                    sum.clique[i],
                    sum.right_map[b]
                )));
            }
        }
    }
    let in_clique: BTreeSet<usize> = clique_local.iter().copied().collect();
    let inside = |e: Edge| in_clique.contains(&e.lo()) && in_clique.contains(&e.hi());

    let mut covered = BTreeSet::new();
    let mut claim = |e: Edge| -> Result<()> {
        if !sum.graph.contains_edge(e) {
            return Err(Error::domain(format!("{e} is not an edge of the glued graph")));
        }
        if !covered.insert(e) {
            return Err(Error::domain(format!("edge {e} is claimed by both sides")));
        }
        Ok(())
    };
    for e in left.base().edges() {
        claim(e.map(|v| sum.left_map[v]))?;
    }
    for &e in right.base().edges() {
        if !inside(e) {
            claim(e.map(|v| sum.right_map[v]))?;
        }
    }
    if covered.len() != sum.graph.m() {
        return Err(Error::domain("the two sides do not cover the glued graph"));
    }

    let arcs: Vec<Arc> = left
        .arcs()
        .iter()
        .map(|a| a.map(|v| sum.left_map[v]))
        .chain(
            right
                .arcs()
                .iter()
                .filter(|a| !inside(a.edge()))
                .map(|a| a.map(|v| sum.right_map[v])),
        )
        .collect();
    let removed: Vec<Edge> = left
        .removed()
        .members()
        .iter()
        .map(|e| e.map(|v| sum.left_map[v]))
        .chain(
            right
                .removed()
                .members()
                .iter()
                .filter(|e| !inside(**e))
                .map(|e| e.map(|v| sum.right_map[v])),
        )
        .collect();
    let role = if left.removed().role() == right.removed().role() {
        left.removed().role()
    } else {
        EdgeRole::Generic
    };
    let removed = EdgeSet::new(&sum.graph, removed, role).map_err(|e| Error::Inconsistency(format!("glued removed set: {e}")))?;
    Orientation::new(sum.graph.clone(), removed, arcs)
}

/// Glues `c1` (on the left side) and `c2` (on the right side, pinned at the
/// clique) into a certificate for `sum.graph`, keeping `c1`'s out-degrees.
pub fn compose_cliquesum(c1: &PieceCertificate, c2: &PieceCertificate, sum: &CliqueSum) -> Result<PieceCertificate> {
    if c1.level != c2.level {
        return Err(Error::domain(format!("level mismatch: {} and {}", c1.level, c2.level)));
    }
    let level = c1.level;
    let orientation = compose_orientations(&c1.orientation, &c2.orientation, sum)?;
    let evidence = match (c1.evidence, c2.evidence) {
        (Evidence::Diff(a), Evidence::Diff(b)) => Evidence::Diff(a.product(b)),
        (Evidence::Acyclic, Evidence::Acyclic) => Evidence::Acyclic,
        _ => return Err(Error::domain("evidence kinds differ")),
    };
    let mut trace: Vec<TraceEntry> = c1.trace.iter().map(|t| t.remap(&sum.left_map)).collect();
    let mut right: Vec<TraceEntry> = c2.trace.iter().map(|t| t.remap(&sum.right_map)).collect();
    if !sum.clique.is_empty() {
        let host = right
            .iter_mut()
            .find(|t| t.joint.is_empty() && sum.clique.iter().all(|v| t.vertex_map.contains(v)))
            .ok_or_else(|| Error::Inconsistency("no right-hand piece holds the joint clique".into()))?;
        host.joint = sum.clique.clone();
    }
    trace.append(&mut right);
    let c = PieceCertificate {
        level,
        pinned: c1.pinned.map(|(u, v)| (sum.left_map[u], sum.left_map[v])),
        orientation,
        evidence,
        trace,
    };
    c.check_contract()?;
    Ok(c)
}

/// Certificate for `g` at `level`, pinned at `pinned` when given (otherwise
/// at the least edge of each component).
pub fn construct(g: &Graph, level: Level, pinned: Option<(usize, usize)>, family: Family) -> Result<Certificate> {
    construct_with(g, level, pinned, family, &SearchLimits::default())
}

pub fn construct_with(
    g: &Graph,
    level: Level,
    pinned: Option<(usize, usize)>,
    family: Family,
    limits: &SearchLimits,
) -> Result<Certificate> {
    let c = construct_piece(g, level, pinned, family, limits)?;
    Certificate::from_construction(g, family, &c)
}

/// [`construct`] without serialization: the whole-graph piece certificate.
pub fn construct_piece(
    g: &Graph,
    level: Level,
    pinned: Option<(usize, usize)>,
    family: Family,
    limits: &SearchLimits,
) -> Result<PieceCertificate> {
    if let Some((u, v)) = pinned {
        if !g.has_edge(u, v) {
            return Err(Error::domain(format!("pinned {u}-{v} is not an edge")));
        }
    }
    let mut comps: Vec<Vec<usize>> = g.components().into_iter().filter(|c| c.len() > 1).collect();
    if let Some((u, _)) = pinned {
        let i = comps.iter().position(|c| c.contains(&u)).expect("u is in a component");
        let first = comps.remove(i);
        comps.insert(0, first);
    }
    let mut acc = PieceCertificate::empty(&Graph::empty(0), level);
    let mut acc_vertices: Vec<usize> = Vec::new();
    for (i, comp) in comps.iter().enumerate() {
        let (h, map) = g.induced(comp);
        let pin = match pinned {
            Some((u, v)) if i == 0 => {
                let at = |x: usize| map.iter().position(|&y| y == x).expect("in component");
                (at(u), at(v))
            }
            _ => h.edges()[0].endpoints(),
        };
        let c = build_connected(&h, &map, level, pin, family, limits)?;
        // 0-sum with everything built so far
        let mut keep = acc_vertices.clone();
        keep.extend(comp);
        keep.sort_unstable();
        let (glued, glued_map) = g.induced(&keep);
        let at = |x: usize| glued_map.iter().position(|&y| y == x).expect("kept");
        let sum = CliqueSum {
            graph: glued,
            left_map: acc_vertices.iter().map(|&x| at(x)).collect(),
            right_map: comp.iter().map(|&x| at(x)).collect(),
            clique: Vec::new(),
        };
        let mut joined = compose_cliquesum(&acc, &c, &sum)?;
        if i == 0 {
            joined.pinned = c.pinned.map(|(u, v)| (sum.right_map[u], sum.right_map[v]));
        }
        acc = joined;
        acc_vertices = keep;
    }
    // lift from the kept vertices to all of g (isolated vertices added)
    let lift: Vec<usize> = acc_vertices.clone();
    let role = level.removed_role().unwrap_or(EdgeRole::Generic);
    let orientation = Orientation::new(
        g.clone(),
        EdgeSet::new(g, acc.removed().members().iter().map(|e| e.map(|v| lift[v])), role)?,
        acc.orientation.arcs().iter().map(|a| a.map(|v| lift[v])).collect(),
    )?;
    let c = PieceCertificate {
        level,
        pinned: acc.pinned.map(|(u, v)| (lift[u], lift[v])),
        orientation,
        evidence: acc.evidence,
        trace: acc.trace.iter().map(|t| t.remap(&lift)).collect(),
    };
    c.check_contract()?;
    Ok(c)
}

fn family_error(family: Family, w: Witness, to_top: &[usize]) -> Error {
    Error::NotInFamily {
        family,
        witness: Box::new(Witness {
            vertex_map: w.vertex_map.iter().map(|&v| to_top[v]).collect(),
            graph: w.graph,
        }),
    }
}

/// The leaf to peel: the last node of a depth-first preorder from `root`.
fn last_preorder(tree: &DecompositionTree, root: usize) -> (usize, usize) {
    let mut stack = vec![(root, usize::MAX, usize::MAX)];
    let mut last = (root, usize::MAX);
    while let Some((node, parent, via)) = stack.pop() {
        last = (node, via);
        let mut next: Vec<(usize, usize)> = tree.adjacent(node).into_iter().filter(|&(m, _)| m != parent).collect();
        next.reverse();
        for (m, j) in next {
            stack.push((m, node, j));
        }
    }
    last
}

/// Recursive driver on a connected graph `h`; `to_top` maps ids of `h` to
/// ids of the caller's graph for error reporting.
fn build_connected(
    h: &Graph,
    to_top: &[usize],
    level: Level,
    pin: (usize, usize),
    family: Family,
    limits: &SearchLimits,
) -> Result<PieceCertificate> {
    let tree = match decompose(h, family) {
        Decomposition::Tree(t) => t,
        Decomposition::Rejected(w) => return Err(family_error(family, w, to_top)),
    };
    let (u, v) = pin;
    let root = tree
        .nodes
        .iter()
        .position(|p| p.contains_edge(u, v))
        .expect("the pinned edge lies in a piece");
    if tree.nodes.len() == 1 {
        let piece = &tree.nodes[0];
        let (lu, lv) = (piece.local_of(u).unwrap(), piece.local_of(v).unwrap());
        let c = piece_base(piece, level, lu, lv, limits)?;
        return relabel_certificate(&c, h, &piece.vertex_map);
    }

    let (leaf, via) = last_preorder(&tree, root);
    let joint = &tree.joints[via];
    let piece = &tree.nodes[leaf];
    let (x, y) = match joint.vertices[..] {
        [a, b] => (a, b),
        [a] => {
            let la = piece.local_of(a).unwrap();
            let y = piece
                .graph
                .neighbors(la)
                .iter()
                .map(|&w| piece.vertex_map[w])
                .min()
                .expect("a glued piece has an edge at its cut vertex");
            (a, y)
        }
        _ => unreachable!("a connected graph has no 0-sum joints"),
    };

    let private: BTreeSet<usize> = piece
        .vertex_map
        .iter()
        .copied()
        .filter(|w| !joint.vertices.contains(w))
        .collect();
    let rest: Vec<usize> = h.vertices().filter(|w| !private.contains(w)).collect();
    let (g1, map1) = h.induced(&rest);
    let at1 = |w: usize| map1.iter().position(|&z| z == w).expect("kept");
    let top1: Vec<usize> = map1.iter().map(|&w| to_top[w]).collect();
    let c1 = build_connected(&g1, &top1, level, (at1(u), at1(v)), family, limits)?;

    let (lx, ly) = (piece.local_of(x).unwrap(), piece.local_of(y).unwrap());
    let mut c2 = piece_base(piece, level, lx, ly, limits)?;
    if level != Level::Five {
        c2 = promote_edge(&c2, lx, ly)?;
    }
    let clique = if joint.size() == 2 { vec![x, y] } else { vec![x] };
    let sum = CliqueSum {
        graph: h.clone(),
        left_map: map1,
        right_map: piece.vertex_map.clone(),
        clique,
    };
    compose_cliquesum(&c1, &c2, &sum)
}

/// Moves a certificate on `piece` (local ids) onto `h` through `map`, where
/// the mapped piece is exactly `h`.
fn relabel_certificate(c: &PieceCertificate, h: &Graph, map: &[usize]) -> Result<PieceCertificate> {
    let sum = CliqueSum {
        graph: h.clone(),
        left_map: map.to_vec(),
        right_map: Vec::new(),
        clique: Vec::new(),
    };
    let empty = PieceCertificate::empty(&Graph::empty(0), c.level);
    compose_cliquesum(c, &empty, &sum)
}

#[cfg(test)]
mod tests;
