//! Single-field corruptions of a certificate, for soundness testing.

use super::{Certificate, EvidenceRecord};
use crate::level::Level;
use crate::graph::{Arc, Edge};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Reverse the `i`-th top-level arc.
    FlipArc(usize),
    /// Delete the `i`-th top-level arc.
    DropArc(usize),
    /// Delete the `i`-th removed edge.
    DropRemoved(usize),
    /// Turn the `i`-th removed edge into an arc toward its lower end.
    OrientRemoved(usize),
    /// Reverse arc `i` of piece `p`.
    FlipPieceArc(usize, usize),
    /// Add one to the even count of piece `p` (or claim counts instead of
    /// acyclicity).
    PerturbEvidence(usize),
    /// Negate the `real_edge` flag of piece `p`.
    ToggleRealEdge(usize),
    /// Claim a different level.
    ChangeLevel(Level),
}

/// Every mutation applicable to `c`. Each one changes exactly one field.
pub fn mutations(c: &Certificate) -> Vec<Mutation> {
    let mut out = Vec::new();
    for i in 0..c.arcs.len() {
        out.push(Mutation::FlipArc(i));
        out.push(Mutation::DropArc(i));
    }
    for i in 0..c.removed.edges.len() {
        out.push(Mutation::DropRemoved(i));
        out.push(Mutation::OrientRemoved(i));
    }
    for (p, piece) in c.pieces.iter().enumerate() {
        for i in 0..piece.arcs.len() {
            out.push(Mutation::FlipPieceArc(p, i));
        }
        out.push(Mutation::PerturbEvidence(p));
        if piece.joint.vertices.len() == 2 {
            out.push(Mutation::ToggleRealEdge(p));
        }
    }
    for l in [Level::Five, Level::Four, Level::Three] {
        if l != c.level {
            out.push(Mutation::ChangeLevel(l));
        }
    }
    out
}

pub fn apply_mutation(c: &Certificate, m: Mutation) -> Certificate {
    let mut c = c.clone();
    match m {
        Mutation::FlipArc(i) => c.arcs[i] = c.arcs[i].reversed(),
        Mutation::DropArc(i) => {
            c.arcs.remove(i);
        }
        Mutation::DropRemoved(i) => {
            c.removed.edges.remove(i);
        }
        Mutation::OrientRemoved(i) => {
            let e: Edge = c.removed.edges.remove(i);
            c.arcs.push(Arc::new(e.hi(), e.lo()));
        }
        Mutation::FlipPieceArc(p, i) => c.pieces[p].arcs[i] = c.pieces[p].arcs[i].reversed(),
        Mutation::PerturbEvidence(p) => {
            c.pieces[p].evidence = match c.pieces[p].evidence {
                EvidenceRecord::Diff {
                    even_count,
                    odd_count,
                    diff,
                } => EvidenceRecord::Diff {
                    even_count: even_count + 1,
                    odd_count,
                    diff: diff + 1,
                },
                EvidenceRecord::Acyclic => EvidenceRecord::Diff {
                    even_count: 1,
                    odd_count: 0,
                    diff: 1,
                },
            }
        }
        Mutation::ToggleRealEdge(p) => c.pieces[p].joint.real_edge = !c.pieces[p].joint.real_edge,
        Mutation::ChangeLevel(l) => c.level = l,
    }
    c
}
