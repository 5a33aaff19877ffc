//! Serialized certificates and an independent verifier.
//!
//! The verifier only uses graph primitives and the exact counting oracle;
//! it never calls the constructor or the decomposition.

mod tamper;
mod verify;

pub use tamper::{apply_mutation, mutations, Mutation};
pub use verify::{verify, verify_json, CheckOutcome, CheckResult, Verdict, VerificationReport, VerifyOptions};

use serde::{Deserialize, Serialize};

use crate::construct::{Evidence, PieceCertificate};
use crate::level::Level;
use crate::decompose::Family;
use crate::error::{Error, Result};
use crate::graph::{write_graph6, Arc, Edge, Graph};
use crate::oracle::DiffResult;

pub const FORMAT_VERSION: &str = "atk33-1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RemovedRole {
    None,
    Matching,
    Forest,
}

impl RemovedRole {
    pub fn for_level(level: Level) -> Self {
        match level {
            Level::Five => RemovedRole::None,
            Level::Four => RemovedRole::Matching,
            Level::Three => RemovedRole::Forest,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RemovedEdges {
    pub role: RemovedRole,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    Planar,
    K5,
    K33,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointRecord {
    /// Ordered so that the `i`-th vertex has out-degree `i` in the piece.
    pub vertices: Vec<usize>,
    /// For a two-vertex joint: whether the clique edge is an edge of the
    /// certified graph (otherwise it only exists inside the pieces).
    pub real_edge: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum EvidenceRecord {
    Diff {
        even_count: u128,
        odd_count: u128,
        diff: i128,
    },
    Acyclic,
}

impl From<Evidence> for EvidenceRecord {
    fn from(e: Evidence) -> Self {
        match e {
            Evidence::Diff(d) => EvidenceRecord::Diff {
                even_count: d.even_count,
                odd_count: d.odd_count,
                diff: d.diff,
            },
            Evidence::Acyclic => EvidenceRecord::Acyclic,
        }
    }
}

impl EvidenceRecord {
    pub fn as_diff(&self) -> Option<DiffResult> {
        match *self {
            EvidenceRecord::Diff {
                even_count,
                odd_count,
                diff,
            } => Some(DiffResult {
                even_count,
                odd_count,
                diff,
            }),
            EvidenceRecord::Acyclic => None,
        }
    }
}

/// One piece of the construction: its own graph in local ids, where those
/// ids land in the certified graph, and its orientation in certified ids
/// (joint clique arcs included).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceRecord {
    pub kind: PieceKind,
    pub graph: String,
    pub vertex_map: Vec<usize>,
    pub joint: JointRecord,
    pub arcs: Vec<Arc>,
    pub removed: Vec<Edge>,
    pub evidence: EvidenceRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub format_version: String,
    /// The certified graph in graph6.
    pub graph: String,
    pub family: Family,
    pub level: Level,
    pub pinned: Option<[usize; 2]>,
    pub removed: RemovedEdges,
    pub arcs: Vec<Arc>,
    #[serde(default)]
    pub pieces: Vec<PieceRecord>,
}

fn sorted_arcs(arcs: impl IntoIterator<Item = Arc>) -> Vec<Arc> {
    let mut v: Vec<Arc> = arcs.into_iter().collect();
    v.sort_by_key(|a| (a.edge(), a.tail));
    v
}

fn sorted_edges(edges: impl IntoIterator<Item = Edge>) -> Vec<Edge> {
    let mut v: Vec<Edge> = edges.into_iter().collect();
    v.sort_unstable();
    v
}

impl Certificate {
    /// Serializable form of a whole-graph construction on `g`.
    pub fn from_construction(g: &Graph, family: Family, c: &PieceCertificate) -> Result<Self> {
        if c.piece() != g {
            return Err(Error::domain("construction does not belong to this graph"));
        }
        let pieces = c
            .trace
            .iter()
            .map(|t| {
                let kind = match t.kind {
                    "k5" => PieceKind::K5,
                    "k33" => PieceKind::K33,
                    _ => PieceKind::Planar,
                };
                Ok(PieceRecord {
                    kind,
                    graph: write_graph6(&t.graph)?,
                    vertex_map: t.vertex_map.clone(),
                    joint: JointRecord {
                        vertices: t.joint.clone(),
                        real_edge: t.joint.len() == 2 && g.has_edge(t.joint[0], t.joint[1]),
                    },
                    arcs: sorted_arcs(t.arcs.iter().copied()),
                    removed: sorted_edges(t.removed.iter().copied()),
                    evidence: t.evidence.into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            format_version: FORMAT_VERSION.to_string(),
            graph: write_graph6(g)?,
            family,
            level: c.level,
            pinned: c.pinned.map(|(u, v)| [u, v]),
            removed: RemovedEdges {
                role: RemovedRole::for_level(c.level),
                edges: sorted_edges(c.removed().members().iter().copied()),
            },
            arcs: sorted_arcs(c.orientation.arcs().iter().copied()),
            pieces,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialize")
    }

    /// Parses a certificate; malformed documents report the JSON path of
    /// the first problem.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let c: Certificate = serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        if c.format_version != FORMAT_VERSION {
            return Err(Error::Schema {
                path: "format_version".into(),
                message: format!("expected {FORMAT_VERSION:?}, found {:?}", c.format_version),
            });
        }
        Ok(c)
    }
}
