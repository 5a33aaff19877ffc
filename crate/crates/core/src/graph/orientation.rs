use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Edge, EdgeRole, EdgeSet, Graph};
use crate::error::{Error, Result};

/// A directed edge `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

impl Arc {
    pub fn new(tail: usize, head: usize) -> Self {
        Arc { tail, head }
    }

    pub fn edge(self) -> Edge {
        Edge::new(self.tail, self.head)
    }

    pub fn reversed(self) -> Arc {
        Arc::new(self.head, self.tail)
    }

    pub fn map(self, f: impl Fn(usize) -> usize) -> Arc {
        Arc::new(f(self.tail), f(self.head))
    }
}

impl From<Arc> for [usize; 2] {
    fn from(a: Arc) -> Self {
        [a.tail, a.head]
    }
}

impl From<[usize; 2]> for Arc {
    fn from([tail, head]: [usize; 2]) -> Self {
        Arc { tail, head }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tail, self.head)
    }
}

/// An orientation of `base` minus `removed`: exactly one arc per remaining
/// edge, with cached out-degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    base: Graph,
    removed: EdgeSet,
    arcs: Vec<Arc>,
    out_deg: Vec<usize>,
}

impl Orientation {
    pub fn new(base: Graph, removed: EdgeSet, arcs: Vec<Arc>) -> Result<Self> {
        if let Some(e) = removed.members().iter().find(|e| !base.contains_edge(**e)) {
            return Err(Error::domain(format!("removed {e} is not an edge")));
        }
        let mut covered = BTreeSet::new();
        for a in &arcs {
            if a.tail == a.head {
                return Err(Error::domain(format!("loop arc {a}")));
            }
            let e = a.edge();
            if !base.contains_edge(e) {
                return Err(Error::domain(format!("arc {a} is not on an edge")));
            }
            if removed.contains(e) {
                return Err(Error::domain(format!("arc {a} lies on a removed edge")));
            }
            if !covered.insert(e) {
                return Err(Error::domain(format!("edge {e} carries two arcs")));
            }
        }
        if covered.len() + removed.len() != base.m() {
            let missing = base
                .edges()
                .iter()
                .find(|e| !covered.contains(e) && !removed.contains(**e))
                .copied();
            return Err(Error::domain(format!(
                "edge {} is neither oriented nor removed",
                missing.map_or_else(String::new, |e| e.to_string())
            )));
        }
        let mut out_deg = vec![0; base.n()];
        for a in &arcs {
            out_deg[a.tail] += 1;
        }
        Ok(Orientation {
            base,
            removed,
            arcs,
            out_deg,
        })
    }

    /// Orientation of the graph underlying `arcs`, nothing removed.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = Arc>,
    {
        let arcs: Vec<Arc> = arcs.into_iter().collect();
        let mut seen = BTreeSet::new();
        for a in &arcs {
            if a.tail >= n || a.head >= n {
                return Err(Error::domain(format!("arc {a} leaves 0..{n}")));
            }
            if a.tail != a.head && !seen.insert(a.edge()) {
                return Err(Error::domain(format!("edge {} carries two arcs", a.edge())));
            }
        }
        let base = Graph::from_edges(n, arcs.iter().map(|a| (a.tail, a.head)))?;
        Self::new(base, EdgeSet::none(EdgeRole::Generic), arcs)
    }

    /// Every edge `{a,b}` oriented from the larger id to the smaller one.
    pub fn toward_lower(g: &Graph) -> Self {
        let arcs = g.edges().iter().map(|e| Arc::new(e.hi(), e.lo())).collect();
        Self::new(g.clone(), EdgeSet::none(EdgeRole::Generic), arcs).expect("covers every edge")
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn removed(&self) -> &EdgeSet {
        &self.removed
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_deg[v]
    }

    pub fn out_degrees(&self) -> &[usize] {
        &self.out_deg
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.head == v).count()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_deg.iter().copied().max().unwrap_or(0)
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.arcs.contains(&Arc::new(tail, head))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn out_degrees_sum_to_edge_count() {
        let g = named::petersen();
        let d = Orientation::toward_lower(&g);
        assert_eq!(d.out_degrees().iter().sum::<usize>(), g.m());
        assert_eq!(d.out_degree(0), 0);
    }

    #[test]
    fn partition_is_enforced() {
        let g = named::complete(3);
        let none = EdgeSet::none(EdgeRole::Generic);
        assert!(Orientation::new(g.clone(), none.clone(), vec![Arc::new(1, 0)]).is_err());
        assert!(Orientation::new(
            g.clone(),
            none.clone(),
            vec![Arc::new(1, 0), Arc::new(0, 1), Arc::new(2, 0), Arc::new(2, 1)]
        )
        .is_err());
        let m = EdgeSet::generic(&g, [Edge::new(0, 1)]).unwrap();
        assert!(Orientation::new(g.clone(), m.clone(), vec![Arc::new(2, 0), Arc::new(2, 1)]).is_ok());
        assert!(
            Orientation::new(g, m, vec![Arc::new(2, 0), Arc::new(2, 1), Arc::new(1, 0)]).is_err()
        );
    }
}
