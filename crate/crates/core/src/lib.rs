//! Alon-Tarsi orientations of K3,3-minor-free graphs.
//!
//! The crate builds orientations with bounded out-degree (optionally after
//! deleting a matching or a forest) by splitting a graph into planar, `K5`
//! and `K3,3` pieces along clique-sums of order at most two, and checks every
//! result with an exact count of even and odd Eulerian subdigraphs.

pub mod census;
pub mod certify;
pub mod construct;
pub mod decompose;
pub mod error;
pub mod graph;
pub mod level;
pub mod oracle;
pub mod planar;

pub use error::{Error, Result};
