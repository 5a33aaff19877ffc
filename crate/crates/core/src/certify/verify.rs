use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{Certificate, EvidenceRecord, PieceKind, PieceRecord, RemovedRole};
use crate::level::Level;
use crate::decompose::Family;
use crate::error::Result;
use crate::graph::{parse_graph6, Arc, Edge, EdgeRole, EdgeSet, Graph, Orientation};
use crate::oracle::{eulerian_diff_capped, is_acyclic, DiffResult, DEFAULT_DIFF_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest arc count for which Eulerian subdigraphs are enumerated.
    pub diff_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            diff_cap: DEFAULT_DIFF_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckOutcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub outcome: CheckOutcome,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub checks: Vec<CheckResult>,
    pub failure_detail: Option<String>,
}

impl VerificationReport {
    fn from_checks(checks: Vec<CheckResult>) -> Self {
        let first = |o: CheckOutcome| checks.iter().find(|c| c.outcome == o);
        let (verdict, failure_detail) = if let Some(c) = first(CheckOutcome::Fail) {
            (Verdict::Reject, Some(format!("{}: {}", c.name, c.detail)))
        } else if let Some(c) = first(CheckOutcome::Inconclusive) {
            (Verdict::Inconclusive, Some(format!("{}: {}", c.name, c.detail)))
        } else {
            (Verdict::Accept, None)
        };
        VerificationReport {
            verdict,
            checks,
            failure_detail,
        }
    }

    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accept
    }
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn push(&mut self, name: &'static str, r: std::result::Result<String, String>) -> bool {
        let ok = r.is_ok();
        let (outcome, detail) = match r {
            Ok(d) => (CheckOutcome::Pass, d),
            Err(d) => (CheckOutcome::Fail, d),
        };
        self.0.push(CheckResult { name, outcome, detail });
        ok
    }

    fn inconclusive(&mut self, name: &'static str, detail: String) {
        self.0.push(CheckResult {
            name,
            outcome: CheckOutcome::Inconclusive,
            detail,
        });
    }
}

/// Parses and verifies a JSON certificate. Schema problems are errors;
/// everything else is reported in the verdict.
pub fn verify_json(text: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    Ok(verify(&Certificate::from_json(text)?, opts))
}

pub fn verify(cert: &Certificate, opts: &VerifyOptions) -> VerificationReport {
    let mut checks = Checks(Vec::new());
    run(cert, opts, &mut checks);
    VerificationReport::from_checks(checks.0)
}

fn cap(level: Level) -> usize {
    match level {
        Level::Five => 4,
        Level::Four => 3,
        Level::Three => 2,
    }
}

fn run(cert: &Certificate, opts: &VerifyOptions, checks: &mut Checks) {
    let g = match parse_graph6(&cert.graph) {
        Ok(g) => g,
        Err(e) => {
            checks.push("graph", Err(e.to_string()));
            return;
        }
    };
    checks.push("graph", Ok(format!("n = {}, m = {}", g.n(), g.m())));
    let level = cert.level;

    // partition of E(G) into arcs and removed edges
    let orientation = match partition(&g, cert) {
        Ok(d) => d,
        Err(e) => {
            checks.push("partition", Err(e));
            return;
        }
    };
    checks.push("partition", Ok(format!("{} arcs, {} removed", orientation.arcs().len(), cert.removed.edges.len())));

    let role_ok = checks.push("removed-role", removed_role(&g, cert));
    let caps_ok = checks.push("degree-caps", degree_caps(&orientation, cert));
    let pin_ok = checks.push("pinned-degrees", pinned_degrees(&orientation, cert));
    if !(role_ok && caps_ok && pin_ok) {
        return;
    }

    let mut direct = None;
    if level == Level::Three {
        let ok = is_acyclic(&orientation);
        checks.push(
            "acyclic",
            if ok {
                Ok("no directed cycle".into())
            } else {
                Err("orientation has a directed cycle".into())
            },
        );
    } else if orientation.arcs().len() <= opts.diff_cap {
        match eulerian_diff_capped(&orientation, opts.diff_cap) {
            Ok(r) if r.is_nonzero() => {
                direct = Some(r);
                checks.push("diff", Ok(format!("EE = {}, OE = {}", r.even_count, r.odd_count)));
            }
            Ok(r) => {
                checks.push("diff", Err(format!("EE = OE = {}", r.even_count)));
            }
            Err(e) => checks.inconclusive("diff", e.to_string()),
        }
    }

    let has_trace = !cert.pieces.is_empty() || g.m() == 0;
    if has_trace {
        match check_trace(&g, cert, opts) {
            TraceOutcome::Pass(product) => {
                checks.push("trace", Ok(format!("{} pieces", cert.pieces.len())));
                if let (Some(d), Some(p)) = (direct, product) {
                    checks.push(
                        "trace-product",
                        if d == p {
                            Ok(format!("product of piece counts equals the direct count ({})", d.diff))
                        } else {
                            Err(format!("piece product {p:?} differs from direct {d:?}"))
                        },
                    );
                }
            }
            TraceOutcome::Fail(e) => {
                checks.push("trace", Err(e));
            }
            TraceOutcome::Inconclusive(e) => checks.inconclusive("trace", e),
        }
    } else if level != Level::Three && direct.is_none() {
        checks.inconclusive(
            "diff",
            format!(
                "{} arcs exceed the enumeration cap {} and no piece trace is present",
                orientation.arcs().len(),
                opts.diff_cap
            ),
        );
    }
}

fn partition(g: &Graph, cert: &Certificate) -> std::result::Result<Orientation, String> {
    let mut seen = BTreeSet::new();
    for a in &cert.arcs {
        if a.tail >= g.n() || a.head >= g.n() || a.tail == a.head || !g.has_edge(a.tail, a.head) {
            return Err(format!("arc {a} is not on an edge of the graph"));
        }
        if !seen.insert(a.edge()) {
            return Err(format!("edge {} appears twice", a.edge()));
        }
    }
    for &e in &cert.removed.edges {
        if e.hi() >= g.n() || !g.contains_edge(e) {
            return Err(format!("removed {e} is not an edge of the graph"));
        }
        if !seen.insert(e) {
            return Err(format!("edge {e} appears twice"));
        }
    }
    if seen.len() != g.m() {
        let missing = g.edges().iter().find(|e| !seen.contains(e)).expect("some edge missing");
        return Err(format!("edge {missing} is neither oriented nor removed"));
    }
    let removed = EdgeSet::generic(g, cert.removed.edges.iter().copied()).map_err(|e| e.to_string())?;
    Orientation::new(g.clone(), removed, cert.arcs.clone()).map_err(|e| e.to_string())
}

fn removed_role(g: &Graph, cert: &Certificate) -> std::result::Result<String, String> {
    let expected = match cert.level {
        Level::Five => RemovedRole::None,
        Level::Four => RemovedRole::Matching,
        Level::Three => RemovedRole::Forest,
    };
    if cert.removed.role != expected {
        return Err(format!("level {} needs role {expected:?}, found {:?}", cert.level, cert.removed.role));
    }
    let edges = &cert.removed.edges;
    match expected {
        RemovedRole::None if !edges.is_empty() => Err("level 5 removes no edges".into()),
        RemovedRole::None => Ok("nothing removed".into()),
        RemovedRole::Matching => {
            let mut deg = vec![0usize; g.n()];
            for e in edges {
                deg[e.lo()] += 1;
                deg[e.hi()] += 1;
            }
            match deg.iter().position(|&d| d > 1) {
                Some(v) => Err(format!("vertex {v} is covered twice by the matching")),
                None => Ok(format!("matching of size {}", edges.len())),
            }
        }
        RemovedRole::Forest => {
            let mut parent: Vec<usize> = (0..g.n()).collect();
            fn root(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            for e in edges {
                let (a, b) = (root(&mut parent, e.lo()), root(&mut parent, e.hi()));
                if a == b {
                    return Err(format!("removed edges contain a cycle through {e}"));
                }
                parent[a] = b;
            }
            Ok(format!("forest with {} edges", edges.len()))
        }
    }
}

fn degree_caps(d: &Orientation, cert: &Certificate) -> std::result::Result<String, String> {
    let c = cap(cert.level);
    if d.max_out_degree() > c {
        let v = (0..d.n()).find(|&v| d.out_degree(v) > c).expect("exists");
        return Err(format!("d+({v}) = {} exceeds {c}", d.out_degree(v)));
    }
    Ok(format!("max out-degree {} <= {c}", d.max_out_degree()))
}

fn pinned_degrees(d: &Orientation, cert: &Certificate) -> std::result::Result<String, String> {
    if let Some([u, v]) = cert.pinned {
        if u >= d.n() || v >= d.n() || !d.base().has_edge(u, v) {
            return Err(format!("pinned {u}-{v} is not an edge"));
        }
        let want = if cert.level == Level::Five { (0, 1) } else { (0, 0) };
        let got = (d.out_degree(u), d.out_degree(v));
        if got != want {
            return Err(format!("pinned out-degrees {got:?}, want {want:?}"));
        }
        return Ok(format!("d+({u}) = {}, d+({v}) = {}", got.0, got.1));
    }
    Ok("no pinned edge".into())
}

enum TraceOutcome {
    Pass(Option<DiffResult>),
    Fail(String),
    Inconclusive(String),
}

fn shape_matches(kind: PieceKind, pg: &Graph) -> bool {
    match kind {
        PieceKind::Planar => true,
        PieceKind::K5 => pg.n() == 5 && pg.m() == 10,
        PieceKind::K33 => {
            if pg.n() != 6 || pg.m() != 9 {
                return false;
            }
            let side: Vec<bool> = pg.vertices().map(|w| w == 0 || !pg.has_edge(0, w)).collect();
            side.iter().filter(|&&s| s).count() == 3
                && pg.edges().iter().all(|e| side[e.lo()] != side[e.hi()])
        }
    }
}

fn check_trace(g: &Graph, cert: &Certificate, opts: &VerifyOptions) -> TraceOutcome {
    let mut seen = vec![false; g.n()];
    let mut owned_arcs: BTreeSet<Arc> = BTreeSet::new();
    let mut owned_removed: BTreeSet<Edge> = BTreeSet::new();
    let mut covered: BTreeSet<Edge> = BTreeSet::new();
    let mut product = Some(DiffResult::acyclic());
    let mut undecided = None;
    for (i, p) in cert.pieces.iter().enumerate() {
        match check_piece(g, cert, p, &seen, opts) {
            Ok(piece) => {
                for a in piece.arcs_outside_joint {
                    if !owned_arcs.insert(a) {
                        return TraceOutcome::Fail(format!("piece {i}: arc {a} is owned twice"));
                    }
                }
                for e in &p.removed {
                    if !owned_removed.insert(*e) {
                        return TraceOutcome::Fail(format!("piece {i}: removed {e} is owned twice"));
                    }
                }
                for e in piece.edges_outside_joint {
                    if !covered.insert(e) {
                        return TraceOutcome::Fail(format!("piece {i}: edge {e} is covered twice"));
                    }
                }
                for &v in &p.vertex_map {
                    seen[v] = true;
                }
                match piece.diff {
                    PieceDiff::Known(d) => product = product.map(|x| x.product(d)),
                    PieceDiff::Acyclic => {}
                    PieceDiff::Unchecked(why) => {
                        product = None;
                        undecided.get_or_insert(format!("piece {i}: {why}"));
                    }
                }
            }
            Err(e) => return TraceOutcome::Fail(format!("piece {i}: {e}")),
        }
    }
    let global_arcs: BTreeSet<Arc> = cert.arcs.iter().copied().collect();
    if owned_arcs != global_arcs {
        let odd = owned_arcs.symmetric_difference(&global_arcs).next().expect("sets differ");
        return TraceOutcome::Fail(format!("arc {odd} is not in both the pieces and the certificate"));
    }
    let global_removed: BTreeSet<Edge> = cert.removed.edges.iter().copied().collect();
    if owned_removed != global_removed {
        return TraceOutcome::Fail("pieces and certificate remove different edges".into());
    }
    if covered.len() != g.m() {
        return TraceOutcome::Fail("pieces do not cover every edge".into());
    }
    if let Some(v) = g.vertices().find(|&v| !seen[v] && g.degree(v) > 0) {
        return TraceOutcome::Fail(format!("vertex {v} is in no piece"));
    }
    match undecided {
        Some(why) => TraceOutcome::Inconclusive(why),
        None => TraceOutcome::Pass(if cert.level == Level::Three { None } else { product }),
    }
}

enum PieceDiff {
    Known(DiffResult),
    Acyclic,
    Unchecked(String),
}

struct CheckedPiece {
    arcs_outside_joint: Vec<Arc>,
    edges_outside_joint: Vec<Edge>,
    diff: PieceDiff,
}

fn check_piece(
    g: &Graph,
    cert: &Certificate,
    p: &PieceRecord,
    seen: &[bool],
    opts: &VerifyOptions,
) -> std::result::Result<CheckedPiece, String> {
    let pg = parse_graph6(&p.graph).map_err(|e| e.to_string())?;
    if p.vertex_map.len() != pg.n() {
        return Err("vertex map length differs from the piece order".into());
    }
    let mut local: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &v) in p.vertex_map.iter().enumerate() {
        if v >= g.n() || local.insert(v, i).is_some() {
            return Err(format!("vertex map entry {v} is out of range or repeated"));
        }
    }
    if !shape_matches(p.kind, &pg) {
        return Err(format!("graph does not have the shape of a {:?} piece", p.kind));
    }
    if p.kind == PieceKind::K33 && cert.family != Family::K33e {
        return Err("K3,3 pieces need the k33e family".into());
    }

    let joint = &p.joint.vertices;
    if joint.len() > 2 {
        return Err("joints have at most two vertices".into());
    }
    let mut joint_local = Vec::new();
    for &x in joint {
        let l = *local.get(&x).ok_or_else(|| format!("joint vertex {x} is not in the piece"))?;
        if !seen[x] {
            return Err(format!("joint vertex {x} is not shared with an earlier piece"));
        }
        if joint_local.contains(&l) {
            return Err("joint vertices repeat".into());
        }
        joint_local.push(l);
    }
    if let Some(&v) = p.vertex_map.iter().find(|&&v| seen[v] && !joint.contains(&v)) {
        return Err(format!("vertex {v} already belongs to an earlier piece"));
    }
    let in_joint = |e: Edge| joint.contains(&e.lo()) && joint.contains(&e.hi());
    if joint.len() == 2 {
        if !pg.has_edge(joint_local[0], joint_local[1]) {
            return Err("joint vertices are not adjacent in the piece".into());
        }
        if p.joint.real_edge != g.has_edge(joint[0], joint[1]) {
            return Err("joint real_edge flag disagrees with the graph".into());
        }
    } else if p.joint.real_edge {
        return Err("real_edge is only meaningful for two-vertex joints".into());
    }

    let mut edges_outside_joint = Vec::new();
    for e in pg.edges() {
        let outer = e.map(|v| p.vertex_map[v]);
        if in_joint(outer) {
            continue;
        }
        if !g.contains_edge(outer) {
            return Err(format!("piece edge {outer} is not an edge of the graph"));
        }
        edges_outside_joint.push(outer);
    }

    let to_local = |v: usize| local.get(&v).copied().ok_or_else(|| format!("vertex {v} is not in the piece"));
    let arcs = p
        .arcs
        .iter()
        .map(|a| Ok(Arc::new(to_local(a.tail)?, to_local(a.head)?)))
        .collect::<std::result::Result<Vec<_>, String>>()?;
    let removed_local = p
        .removed
        .iter()
        .map(|e| Ok(Edge::new(to_local(e.lo())?, to_local(e.hi())?)))
        .collect::<std::result::Result<Vec<_>, String>>()?;
    if p.removed.iter().any(|&e| in_joint(e)) {
        return Err("a joint edge is removed".into());
    }
    let removed = EdgeSet::new(&pg, removed_local, EdgeRole::Generic).map_err(|e| e.to_string())?;
    let d = Orientation::new(pg.clone(), removed, arcs).map_err(|e| format!("piece orientation: {e}"))?;

    for (i, &l) in joint_local.iter().enumerate() {
        if d.out_degree(l) != i {
            return Err(format!(
                "joint ladder fails at {}: out-degree {}, want {i}",
                joint[i],
                d.out_degree(l)
            ));
        }
    }
    let c = cap(cert.level);
    if d.max_out_degree() > c {
        return Err(format!("piece out-degree {} exceeds {c}", d.max_out_degree()));
    }

    let diff = match (cert.level, p.evidence) {
        (Level::Three, EvidenceRecord::Acyclic) => {
            if !is_acyclic(&d) {
                return Err("piece claims acyclic but has a cycle".into());
            }
            PieceDiff::Acyclic
        }
        (Level::Three, _) => return Err("level 3 pieces must be acyclic".into()),
        (_, EvidenceRecord::Acyclic) => return Err("levels 5 and 4 record counts".into()),
        (_, ev) => {
            let claimed = ev.as_diff().expect("diff record");
            if claimed.diff != claimed.even_count as i128 - claimed.odd_count as i128 || !claimed.is_nonzero() {
                return Err(format!("recorded counts {claimed:?} are inconsistent or zero"));
            }
            if d.arcs().len() <= opts.diff_cap {
                let actual = eulerian_diff_capped(&d, opts.diff_cap).map_err(|e| e.to_string())?;
                if actual != claimed {
                    return Err(format!("recorded {claimed:?}, recomputed {actual:?}"));
                }
                PieceDiff::Known(actual)
            } else if is_acyclic(&d) {
                if claimed != DiffResult::acyclic() {
                    return Err(format!("acyclic piece recorded as {claimed:?}"));
                }
                PieceDiff::Known(claimed)
            } else {
                PieceDiff::Unchecked(format!("{} arcs exceed the enumeration cap {}", d.arcs().len(), opts.diff_cap))
            }
        }
    };

    let arcs_outside_joint = p.arcs.iter().copied().filter(|a| !in_joint(a.edge())).collect();
    Ok(CheckedPiece {
        arcs_outside_joint,
        edges_outside_joint,
        diff,
    })
}
