//! Exact Alon-Tarsi quantities: even/odd Eulerian subdigraph counts, the
//! matching graph-polynomial coefficient, acyclicity, and brute-force
//! AT and chromatic numbers for sanity checks. Integer arithmetic only.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Arc, Graph, Orientation};

/// Default bound on the number of arcs for subset enumeration.
pub const DEFAULT_DIFF_CAP: usize = 24;
/// Largest edge count accepted by [`at_number`].
pub const AT_NUMBER_EDGE_CAP: usize = 20;
/// Largest order accepted by [`chromatic_number`].
pub const CHROMATIC_VERTEX_CAP: usize = 10;

/// Counts of Eulerian subdigraphs with an even and an odd number of arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiffResult {
    pub even_count: u128,
    pub odd_count: u128,
    pub diff: i128,
}

impl DiffResult {
    pub fn new(even_count: u128, odd_count: u128) -> Self {
        DiffResult {
            even_count,
            odd_count,
            diff: even_count as i128 - odd_count as i128,
        }
    }

    /// The counts of an acyclic digraph: only the empty circulation.
    pub fn acyclic() -> Self {
        Self::new(1, 0)
    }

    /// Counts for an arc-disjoint union whose circulations split as
    /// independent pairs, one from each side.
    pub fn product(self, other: DiffResult) -> Self {
        Self::new(
            self.even_count * other.even_count + self.odd_count * other.odd_count,
            self.even_count * other.odd_count + self.odd_count * other.even_count,
        )
    }

    pub fn is_nonzero(&self) -> bool {
        self.diff != 0
    }
}

fn check_cap(arcs: usize, cap: usize) -> Result<()> {
    if arcs > cap {
        return Err(Error::ResourceLimit {
            what: "arc count",
            size: arcs,
            cap,
        });
    }
    Ok(())
}

/// Order in which circulation search decides arcs: vertices are ranked
/// breadth-first from the highest-degree vertex, and arcs are sorted by the
/// later of their endpoints' ranks, so each vertex is closed as early as
/// possible and its balance constraint starts pruning.
fn search_order(n: usize, arcs: &[Arc]) -> Vec<usize> {
    let g = Graph::from_edges(n, arcs.iter().map(|a| (a.tail, a.head))).expect("arcs form a simple graph");
    let mut rank = vec![usize::MAX; n];
    let mut next = 0;
    let mut roots: Vec<usize> = g.vertices().collect();
    roots.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    for r in roots {
        if rank[r] != usize::MAX {
            continue;
        }
        for v in g.bfs_order(r) {
            rank[v] = next;
            next += 1;
        }
    }
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by_key(|&i| {
        let (a, b) = (rank[arcs[i].tail], rank[arcs[i].head]);
        (a.max(b), a.min(b))
    });
    order
}

struct CirculationSearch<'a, F: FnMut(u64, usize)> {
    arcs: &'a [Arc],
    order: Vec<usize>,
    balance: Vec<i64>,
    rem_out: Vec<i64>,
    rem_in: Vec<i64>,
    visit: F,
}

impl<F: FnMut(u64, usize)> CirculationSearch<'_, F> {
    fn feasible(&self, v: usize) -> bool {
        // final balance = balance + (chosen remaining out) - (chosen remaining in)
        self.balance[v] <= self.rem_in[v] && -self.balance[v] <= self.rem_out[v]
    }

    fn run(&mut self, depth: usize, mask: u64, size: usize) {
        if depth == self.order.len() {
            (self.visit)(mask, size);
            return;
        }
        let idx = self.order[depth];
        let Arc { tail, head } = self.arcs[idx];
        self.rem_out[tail] -= 1;
        self.rem_in[head] -= 1;

        if self.feasible(tail) && self.feasible(head) {
            self.run(depth + 1, mask, size);
        }
        self.balance[tail] += 1;
        self.balance[head] -= 1;
        if self.feasible(tail) && self.feasible(head) {
            self.run(depth + 1, mask | (1 << idx), size + 1);
        }
        self.balance[tail] -= 1;
        self.balance[head] += 1;

        self.rem_out[tail] += 1;
        self.rem_in[head] += 1;
    }
}

/// Calls `visit(mask, size)` once for every arc subset with equal in- and
/// out-degree at each vertex. Bit `i` of `mask` stands for `d.arcs()[i]`.
pub fn for_each_circulation<F>(d: &Orientation, cap: usize, visit: F) -> Result<()>
where
    F: FnMut(u64, usize),
{
    check_cap(d.arcs().len(), cap.min(64))?;
    circulations(d.n(), d.arcs(), visit);
    Ok(())
}

fn circulations<F: FnMut(u64, usize)>(n: usize, arcs: &[Arc], visit: F) {
    let mut rem_out = vec![0i64; n];
    let mut rem_in = vec![0i64; n];
    for a in arcs {
        rem_out[a.tail] += 1;
        rem_in[a.head] += 1;
    }
    let mut search = CirculationSearch {
        arcs,
        order: search_order(n, arcs),
        balance: vec![0; n],
        rem_out,
        rem_in,
        visit,
    };
    search.run(0, 0, 0);
}

fn count_circulations(n: usize, arcs: &[Arc]) -> DiffResult {
    let (mut even, mut odd) = (0u128, 0u128);
    circulations(n, arcs, |_, size| {
        if size % 2 == 0 {
            even += 1;
        } else {
            odd += 1;
        }
    });
    DiffResult::new(even, odd)
}

/// `|EE(D)|` and `|OE(D)|` by pruned enumeration, with the default cap.
pub fn eulerian_diff(d: &Orientation) -> Result<DiffResult> {
    eulerian_diff_capped(d, DEFAULT_DIFF_CAP)
}

pub fn eulerian_diff_capped(d: &Orientation, cap: usize) -> Result<DiffResult> {
    check_cap(d.arcs().len(), cap.min(64))?;
    Ok(count_circulations(d.n(), d.arcs()))
}

/// Coefficient of `prod_v x_v^{outdeg(v)}` in `prod_{(t,h)} (x_t - x_h)`.
///
/// Terms are expanded arc by arc; a partial monomial is dropped as soon as
/// some exponent exceeds the target out-degree or can no longer reach it
/// with the arcs left.
pub fn coeff_diff(d: &Orientation) -> Result<i128> {
    coeff_diff_capped(d, DEFAULT_DIFF_CAP)
}

pub fn coeff_diff_capped(d: &Orientation, cap: usize) -> Result<i128> {
    let arcs = d.arcs();
    check_cap(arcs.len(), cap)?;
    let n = d.n();
    let target: Vec<u64> = d.out_degrees().iter().map(|&k| k as u64).collect();
    // mixed-radix place values, radix outdeg(v) + 1
    let mut place = vec![0u64; n];
    let mut acc = 1u64;
    for v in 0..n {
        place[v] = acc;
        acc = acc
            .checked_mul(target[v] + 1)
            .ok_or(Error::ResourceLimit {
                what: "monomial space",
                size: usize::MAX,
                cap: u64::MAX as usize,
            })?;
    }
    let mut remaining = vec![0u64; n];
    for a in arcs {
        remaining[a.tail] += 1;
        remaining[a.head] += 1;
    }
    let exponent = |key: u64, v: usize| (key / place[v]) % (target[v] + 1);

    let mut terms: HashMap<u64, i128> = HashMap::from([(0, 1)]);
    for a in arcs {
        remaining[a.tail] -= 1;
        remaining[a.head] -= 1;
        let mut next: HashMap<u64, i128> = HashMap::with_capacity(terms.len() * 2);
        for (&key, &c) in &terms {
            for (v, sign) in [(a.tail, 1i128), (a.head, -1i128)] {
                let e = exponent(key, v) + 1;
                if e > target[v] {
                    continue;
                }
                let new_key = key + place[v];
                let u = if v == a.tail { a.head } else { a.tail };
                // the untouched endpoint must still be able to reach its target
                if exponent(new_key, u) + remaining[u] < target[u] {
                    continue;
                }
                if e + remaining[v] < target[v] {
                    continue;
                }
                *next.entry(new_key).or_insert(0) += sign * c;
            }
        }
        next.retain(|_, c| *c != 0);
        terms = next;
    }
    let full: u64 = (0..n).map(|v| target[v] * place[v]).sum();
    Ok(terms.get(&full).copied().unwrap_or(0))
}

/// Kahn's algorithm: true iff the arcs contain no directed cycle.
pub fn is_acyclic(d: &Orientation) -> bool {
    arcs_acyclic(d.n(), d.arcs())
}

pub(crate) fn arcs_acyclic(n: usize, arcs: &[Arc]) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in arcs {
        indeg[a.head] += 1;
        out[a.tail].push(a.head);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut peeled = 0;
    while let Some(v) = stack.pop() {
        peeled += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    peeled == n
}

/// Least `k` such that some orientation with maximum out-degree below `k`
/// has `|EE| != |OE|`, by enumerating all `2^m` orientations.
///
/// Orientations are visited in Gray-code order so each step flips one arc
/// and updates two out-degrees; the circulation count is only evaluated
/// for orientations that would improve the current best.
pub fn at_number(g: &Graph) -> Result<usize> {
    let m = g.m();
    if m > AT_NUMBER_EDGE_CAP {
        return Err(Error::ResourceLimit {
            what: "edge count",
            size: m,
            cap: AT_NUMBER_EDGE_CAP,
        });
    }
    if m == 0 {
        return Ok(1);
    }
    let n = g.n();
    let lower = m.div_ceil(n) + 1;
    let mut arcs: Vec<Arc> = g.edges().iter().map(|e| Arc::new(e.hi(), e.lo())).collect();
    let mut out = vec![0usize; n];
    for a in &arcs {
        out[a.tail] += 1;
    }
    let mut best = usize::MAX;
    for step in 0u64..(1u64 << m) {
        if step > 0 {
            let i = step.trailing_zeros() as usize;
            out[arcs[i].tail] -= 1;
            arcs[i] = arcs[i].reversed();
            out[arcs[i].tail] += 1;
        }
        let k = out.iter().copied().max().unwrap_or(0) + 1;
        if k < best && count_circulations(n, &arcs).is_nonzero() {
            best = k;
            if best == lower {
                break;
            }
        }
    }
    Ok(best)
}

/// Least number of colors in a proper coloring, by backtracking.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > CHROMATIC_VERTEX_CAP {
        return Err(Error::ResourceLimit {
            what: "vertex count",
            size: n,
            cap: CHROMATIC_VERTEX_CAP,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    fn extend(g: &Graph, k: usize, colors: &mut Vec<usize>, used: usize) -> bool {
        let v = colors.len();
        if v == g.n() {
            return true;
        }
        // a fresh color is only tried once: colors are interchangeable
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).iter().any(|&w| w < v && colors[w] == c) {
                continue;
            }
            colors.push(c);
            if extend(g, k, colors, used.max(c + 1)) {
                return true;
            }
            colors.pop();
        }
        false
    }
    Ok((1..=n)
        .find(|&k| extend(g, k, &mut Vec::with_capacity(n), 0))
        .expect("n colors always suffice"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn directed_cycle(n: usize) -> Orientation {
        Orientation::from_arcs(n, (0..n).map(|i| Arc::new(i, (i + 1) % n))).unwrap()
    }

    /// Every arc subset, balance checked directly.
    fn naive_counts(d: &Orientation) -> (u128, u128) {
        let arcs = d.arcs();
        let (mut even, mut odd) = (0, 0);
        for mask in 0u64..(1 << arcs.len()) {
            let mut bal = vec![0i64; d.n()];
            for (i, a) in arcs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    bal[a.tail] += 1;
                    bal[a.head] -= 1;
                }
            }
            if bal.iter().all(|&b| b == 0) {
                if mask.count_ones() % 2 == 0 {
                    even += 1;
                } else {
                    odd += 1;
                }
            }
        }
        (even, odd)
    }

    /// Expands all 2^m products term by term.
    fn naive_coeff(d: &Orientation) -> i128 {
        let arcs = d.arcs();
        let mut total = 0;
        for mask in 0u64..(1 << arcs.len()) {
            let mut exp = vec![0usize; d.n()];
            let mut sign = 1;
            for (i, a) in arcs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    exp[a.head] += 1;
                    sign = -sign;
                } else {
                    exp[a.tail] += 1;
                }
            }
            if exp == d.out_degrees() {
                total += sign;
            }
        }
        total
    }

    #[test]
    fn naive_oracles_give_the_listed_values() {
        assert_eq!(naive_counts(&directed_cycle(3)), (1, 1));
        assert_eq!(naive_counts(&directed_cycle(4)), (2, 0));
        assert_eq!(naive_counts(&Orientation::toward_lower(&named::complete(5))), (1, 0));
        assert_eq!(naive_coeff(&directed_cycle(3)), 0);
        assert_eq!(naive_coeff(&directed_cycle(4)).abs(), 2);
        assert_eq!(naive_coeff(&Orientation::toward_lower(&named::complete(3))).abs(), 1);
    }

    #[test]
    fn eulerian_diff_examples() {
        let tt = Orientation::toward_lower(&named::complete(5));
        assert_eq!(eulerian_diff(&tt).unwrap(), DiffResult::new(1, 0));
        assert_eq!(eulerian_diff(&directed_cycle(3)).unwrap(), DiffResult::new(1, 1));
        let c4 = eulerian_diff(&directed_cycle(4)).unwrap();
        assert_eq!((c4.even_count, c4.odd_count, c4.diff), (2, 0, 2));
    }

    #[test]
    fn coeff_diff_examples() {
        assert_eq!(coeff_diff(&directed_cycle(3)).unwrap(), 0);
        let tt3 = Orientation::toward_lower(&named::complete(3));
        // out-degrees (0,1,2): monomial y z^2
        assert_eq!(tt3.out_degrees(), &[0, 1, 2]);
        assert_eq!(coeff_diff(&tt3).unwrap().abs(), 1);
        assert_eq!(coeff_diff(&directed_cycle(4)).unwrap().abs(), 2);
    }

    #[test]
    fn enumeration_matches_naive_on_k4_orientations() {
        let g = named::complete(4);
        for bits in 0u32..(1 << g.m()) {
            let arcs = g.edges().iter().enumerate().map(|(i, e)| {
                if bits >> i & 1 == 1 {
                    Arc::new(e.lo(), e.hi())
                } else {
                    Arc::new(e.hi(), e.lo())
                }
            });
            let d = Orientation::from_arcs(4, arcs).unwrap();
            let r = eulerian_diff(&d).unwrap();
            assert_eq!((r.even_count, r.odd_count), naive_counts(&d));
            assert_eq!(coeff_diff(&d).unwrap(), naive_coeff(&d));
        }
    }

    #[test]
    fn caps_are_enforced() {
        let d = directed_cycle(5);
        assert!(matches!(
            eulerian_diff_capped(&d, 4),
            Err(Error::ResourceLimit { size: 5, cap: 4, .. })
        ));
        assert!(coeff_diff_capped(&d, 4).is_err());
        let big = named::complete(7);
        assert!(matches!(at_number(&big), Err(Error::ResourceLimit { .. })));
        assert!(matches!(chromatic_number(&Graph::empty(11)), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn acyclicity_examples() {
        assert!(is_acyclic(&Orientation::toward_lower(&named::complete(5))));
        assert!(!is_acyclic(&directed_cycle(3)));
        assert!(is_acyclic(&Orientation::toward_lower(&Graph::empty(3))));
    }

    /// Brute force straight from the definition: all orientations, naive
    /// subset counting, no pruning and no Gray code.
    fn naive_at(g: &Graph) -> usize {
        let mut best = usize::MAX;
        for bits in 0u32..(1 << g.m()) {
            let arcs = g.edges().iter().enumerate().map(|(i, e)| {
                if bits >> i & 1 == 1 {
                    Arc::new(e.lo(), e.hi())
                } else {
                    Arc::new(e.hi(), e.lo())
                }
            });
            let d = Orientation::new(g.clone(), crate::graph::EdgeSet::none(crate::graph::EdgeRole::Generic), arcs.collect()).unwrap();
            let (e, o) = naive_counts(&d);
            if e != o {
                best = best.min(d.max_out_degree() + 1);
            }
        }
        best
    }

    #[test]
    fn at_number_examples() {
        assert_eq!(naive_at(&named::cycle(4)), 2);
        assert_eq!(naive_at(&named::cycle(5)), 3);
        assert_eq!(at_number(&named::cycle(4)).unwrap(), 2);
        assert_eq!(at_number(&named::cycle(5)).unwrap(), 3);
        assert_eq!(at_number(&named::complete(5)).unwrap(), 5);
        assert_eq!(at_number(&named::complete(4)).unwrap(), naive_at(&named::complete(4)));
        assert_eq!(at_number(&named::star(4)).unwrap(), 2);
        assert_eq!(at_number(&Graph::empty(3)).unwrap(), 1);
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&named::complete(5)).unwrap(), 5);
        assert_eq!(chromatic_number(&named::cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&named::complete_bipartite(3, 4)).unwrap(), 2);
        assert_eq!(chromatic_number(&named::cube()).unwrap(), 2);
        assert_eq!(chromatic_number(&named::petersen()).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::empty(4)).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::empty(0)).unwrap(), 0);
    }

    #[test]
    fn product_counts_compose() {
        let a = DiffResult::new(2, 1);
        let b = DiffResult::new(3, 1);
        let p = a.product(b);
        assert_eq!((p.even_count, p.odd_count), (7, 5));
        assert_eq!(p.diff, a.diff * b.diff);
    }
}
