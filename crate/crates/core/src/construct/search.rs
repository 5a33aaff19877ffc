use super::{Evidence, Level, PieceCertificate};
use crate::error::{Error, Result};
use crate::graph::{Arc, Edge};
use crate::oracle::eulerian_diff_capped;
use crate::planar::{outer_walk_through_edge, PlaneEmbedding};

/// Bounds on the planar search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest piece (in edges) the search will attempt.
    pub max_edges: usize,
    /// Search nodes visited before giving up.
    pub max_nodes: u64,
    /// Arc bound for certifying a cyclic candidate by subset enumeration.
    pub diff_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_edges: 64,
            max_nodes: 50_000_000,
            diff_cap: 28,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Choice {
    Unset,
    Arc(usize, usize),
    Removed,
}

#[derive(Clone, Copy)]
enum Target {
    AtMost(usize),
    Exactly(usize),
    /// At most `2 - d_M(v)`.
    MatchingBoundary,
}

struct Search<'a> {
    level: Level,
    limits: &'a SearchLimits,
    edges: Vec<Edge>,
    target: Vec<Target>,
    out_cap: usize,
    out: Vec<usize>,
    unassigned: Vec<usize>,
    removed_deg: Vec<usize>,
    out_adj: Vec<Vec<usize>>,
    removed_adj: Vec<Vec<usize>>,
    choice: Vec<Choice>,
    budget: usize,
    removed_count: usize,
    acyclic_only: bool,
    nodes: u64,
    found: Option<Evidence>,
}

impl Search<'_> {
    fn vertex_ok(&self, w: usize) -> bool {
        let out = self.out[w];
        if out > self.out_cap {
            return false;
        }
        match self.target[w] {
            Target::AtMost(t) => out <= t,
            Target::Exactly(t) => out <= t && out + self.unassigned[w] >= t,
            Target::MatchingBoundary => out + self.removed_deg[w] <= 2,
        }
    }

    fn reaches(adj: &[Vec<usize>], from: usize, to: usize) -> bool {
        let mut seen = vec![false; adj.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(x) = stack.pop() {
            if x == to {
                return true;
            }
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    fn allowed(&self, c: Choice, e: Edge) -> bool {
        match c {
            Choice::Arc(t, h) => !self.acyclic_only || !Self::reaches(&self.out_adj, h, t),
            Choice::Removed => {
                if self.level == Level::Five || self.removed_count == self.budget {
                    return false;
                }
                let (a, b) = e.endpoints();
                match self.level {
                    Level::Four => self.removed_deg[a] == 0 && self.removed_deg[b] == 0,
                    _ => !Self::reaches(&self.removed_adj, a, b),
                }
            }
            Choice::Unset => false,
        }
    }

    fn apply(&mut self, i: usize, c: Choice, undo: bool) {
        let (a, b) = self.edges[i].endpoints();
        if undo {
            self.unassigned[a] += 1;
            self.unassigned[b] += 1;
        } else {
            self.unassigned[a] -= 1;
            self.unassigned[b] -= 1;
        }
        match c {
            Choice::Arc(t, h) => {
                if undo {
                    self.out[t] -= 1;
                    self.out_adj[t].pop();
                } else {
                    self.out[t] += 1;
                    self.out_adj[t].push(h);
                }
            }
            Choice::Removed => {
                if undo {
                    self.removed_deg[a] -= 1;
                    self.removed_deg[b] -= 1;
                    self.removed_adj[a].pop();
                    self.removed_adj[b].pop();
                    self.removed_count -= 1;
                } else {
                    self.removed_deg[a] += 1;
                    self.removed_deg[b] += 1;
                    self.removed_adj[a].push(b);
                    self.removed_adj[b].push(a);
                    self.removed_count += 1;
                }
            }
            Choice::Unset => {}
        }
        self.choice[i] = if undo { Choice::Unset } else { c };
    }

    fn leaf(&self) -> Result<Option<Evidence>> {
        if self.acyclic_only {
            return Ok(Some(Evidence::for_acyclic(self.level)));
        }
        let arcs = self.arcs();
        let d = crate::graph::Orientation::from_arcs(self.out.len(), arcs)?;
        let r = eulerian_diff_capped(&d, self.limits.diff_cap)?;
        Ok(r.is_nonzero().then_some(Evidence::Diff(r)))
    }

    fn arcs(&self) -> Vec<Arc> {
        self.choice
            .iter()
            .filter_map(|c| match *c {
                Choice::Arc(t, h) => Some(Arc::new(t, h)),
                _ => None,
            })
            .collect()
    }

    fn run(&mut self, i: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(Error::ResourceLimit {
                what: "planar search nodes",
                size: self.nodes as usize,
                cap: self.limits.max_nodes as usize,
            });
        }
        if i == self.edges.len() {
            if let Some(ev) = self.leaf()? {
                self.found = Some(ev);
                return Ok(true);
            }
            return Ok(false);
        }
        let e = self.edges[i];
        let (a, b) = e.endpoints();
        for c in [Choice::Arc(b, a), Choice::Arc(a, b), Choice::Removed] {
            if !self.allowed(c, e) {
                continue;
            }
            self.apply(i, c, false);
            if self.vertex_ok(a) && self.vertex_ok(b) && self.run(i + 1)? {
                return Ok(true);
            }
            self.apply(i, c, true);
        }
        Ok(false)
    }
}

/// [`planar_base_with`] under [`SearchLimits::default`].
pub fn planar_base(e: &PlaneEmbedding, level: Level, u: usize, v: usize) -> Result<PieceCertificate> {
    planar_base_with(e, level, u, v, &SearchLimits::default())
}

/// Backtracking search for an orientation (and matching or forest) of a
/// plane graph with the degree profile of `level` along the boundary walk
/// through `uv`.
///
/// Acyclic candidates are tried first, for every removal budget, and need
/// no enumeration; only then are cyclic candidates certified by counting
/// Eulerian subdigraphs.
pub fn planar_base_with(
    e: &PlaneEmbedding,
    level: Level,
    u: usize,
    v: usize,
    limits: &SearchLimits,
) -> Result<PieceCertificate> {
    let g = e.graph();
    let walk = outer_walk_through_edge(e, u, v)?;
    if g.m() > limits.max_edges {
        return Err(Error::ResourceLimit {
            what: "planar piece edges",
            size: g.m(),
            cap: limits.max_edges,
        });
    }
    let n = g.n();
    let mut target = vec![Target::AtMost(level.out_cap()); n];
    for w in walk.later_vertices() {
        target[w] = match level {
            Level::Five => Target::AtMost(2),
            Level::Four => Target::MatchingBoundary,
            Level::Three => Target::Exactly(1),
        };
    }
    let (du, dv) = level.pinned_degrees();
    target[u] = Target::Exactly(du);
    target[v] = Target::Exactly(dv);

    let order = g.bfs_order(u);
    let mut rank = vec![usize::MAX; n];
    for (i, &w) in order.iter().enumerate() {
        rank[w] = i;
    }
    let uv = Edge::new(u, v);
    let mut edges: Vec<Edge> = g.edges().iter().copied().filter(|&x| x != uv).collect();
    edges.sort_by_key(|x| {
        let (ra, rb) = (rank[x.lo()], rank[x.hi()]);
        (ra.max(rb), ra.min(rb))
    });
    edges.insert(0, uv);

    let max_budget = match level {
        Level::Five => 0,
        Level::Four => n / 2,
        Level::Three => n.saturating_sub(1),
    };
    let mut s = Search {
        level,
        limits,
        unassigned: g.vertices().map(|w| g.degree(w)).collect(),
        choice: vec![Choice::Unset; edges.len()],
        edges,
        target,
        out_cap: level.out_cap(),
        out: vec![0; n],
        removed_deg: vec![0; n],
        out_adj: vec![Vec::new(); n],
        removed_adj: vec![Vec::new(); n],
        budget: 0,
        removed_count: 0,
        acyclic_only: true,
        nodes: 0,
        found: None,
    };
    let phases: &[bool] = if level == Level::Three { &[true] } else { &[true, false] };
    for &acyclic_only in phases {
        s.acyclic_only = acyclic_only;
        for budget in 0..=max_budget {
            s.budget = budget;
            if s.run(0)? {
                let evidence = s.found.expect("set on success");
                let removed = s
                    .edges
                    .iter()
                    .zip(&s.choice)
                    .filter(|(_, c)| **c == Choice::Removed)
                    .map(|(x, _)| *x)
                    .collect();
                return PieceCertificate::single("planar", g, level, (u, v), removed, s.arcs(), evidence);
            }
        }
    }
    Err(Error::Inconsistency(format!(
        "planar search exhausted at level {level} for pinned edge {u}-{v} on {n} vertices"
    )))
}
