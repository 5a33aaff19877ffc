//! Exhaustive small-graph censuses, either labeled or one graph per
//! isomorphism class.
//!
//! Classes are built by vertex augmentation and deduplicated with a
//! canonical form computed by colour refinement plus individualization.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Largest order handled by the census functions (pairs must fit a `u64`).
pub const CENSUS_MAX_N: usize = 11;

fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

/// Every graph on vertices `0..n`, one per edge subset.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 8, "labeled census is limited to n <= 8");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..(1u64 << pairs.len())).map(move |mask| {
        let chosen = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p);
        Graph::from_edges(n, chosen).expect("valid pairs")
    })
}

/// Iterated colour refinement; colours are ranks of sorted signatures, so
/// the result depends only on the isomorphism type of `(g, colors)`.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect::<BTreeSet<_>>().into_iter().collect();
        colors = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present"))
            .collect();
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

fn key_for(g: &Graph, position: &[usize]) -> u64 {
    g.edges()
        .iter()
        .fold(0, |k, e| k | 1 << pair_index(position[e.lo()], position[e.hi()]))
}

fn canonical_search(g: &Graph, colors: Vec<usize>, best: &mut Option<(u64, Vec<usize>)>) {
    let colors = refine(g, colors);
    let n = g.n();
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c] += 1;
    }
    let Some(cell) = (0..n).find(|&c| counts[c] > 1) else {
        let key = key_for(g, &colors);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            *best = Some((key, colors));
        }
        return;
    };
    for v in g.vertices().filter(|&v| colors[v] == cell) {
        let split = colors
            .iter()
            .enumerate()
            .map(|(w, &c)| 2 * c + usize::from(w != v))
            .collect();
        canonical_search(g, split, best);
    }
}

/// A relabeling `perm` (old id -> new id) such that isomorphic graphs map
/// to identical graphs.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    assert!(g.n() <= CENSUS_MAX_N);
    let mut best = None;
    canonical_search(g, vec![0; g.n()], &mut best);
    best.map(|(_, p)| p).unwrap_or_default()
}

pub fn canonical_form(g: &Graph) -> Graph {
    g.relabel(&canonical_labeling(g))
}

fn canonical_key(g: &Graph) -> u64 {
    key_for(g, &canonical_labeling(g))
}

fn augment(base: &[Graph], n: usize, connected: bool) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let start = u64::from(connected);
    for g in base {
        for mask in start..(1u64 << (n - 1)) {
            let new_edges = (0..n - 1).filter(|i| mask >> i & 1 == 1).map(|i| (i, n - 1));
            let h = Graph::from_edges(n, g.edges().iter().map(|e| e.endpoints()).chain(new_edges))
                .expect("valid");
            if seen.insert(canonical_key(&h)) {
                out.push(canonical_form(&h));
            }
        }
    }
    out
}

/// One graph per isomorphism class on exactly `n` vertices.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    assert!(n <= CENSUS_MAX_N);
    let mut level = vec![Graph::empty(0)];
    for k in 1..=n {
        level = if k == 1 {
            vec![Graph::empty(1)]
        } else {
            augment(&level, k, false)
        };
    }
    level
}

/// One connected graph per isomorphism class on exactly `n` vertices.
///
/// Every connected graph has a vertex whose deletion keeps it connected,
/// so augmenting connected graphs with a new vertex of positive degree
/// reaches every class.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    assert!(n <= CENSUS_MAX_N);
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        level = augment(&level, k, true);
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn class_counts_match_known_sequences() {
        // graphs: 1, 2, 4, 11, 34, 156; connected: 1, 1, 2, 6, 21, 112
        let all: Vec<usize> = (1..=6).map(|n| graphs_up_to_iso(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs_up_to_iso(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn canonical_form_is_invariant_under_relabeling() {
        let p = named::petersen();
        let perm = vec![3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        assert_eq!(canonical_form(&p), canonical_form(&p.relabel(&perm)));
        assert_ne!(canonical_form(&named::cycle(6)), canonical_form(&named::disjoint_union(&named::cycle(3), &named::cycle(3))));
    }

    #[test]
    fn labeled_counts() {
        assert_eq!(labeled_graphs(4).count(), 64);
        assert_eq!(labeled_graphs(0).count(), 1);
    }
}
