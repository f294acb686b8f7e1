//! Certifying recognizer for graphs of path-width at most two.
//!
//! The crate decides whether a graph has path-width <= 2 by reconstructing
//! its structure: 2-connected pieces are recognized as tracks (two disjoint
//! paths joined by noncrossing chords), blocks and double-rooted trees are
//! glued along a path-like spine, and pendant trees are classified as
//! fripperies and hairs. A positive answer comes with a verified width-2
//! path-decomposition; a negative answer comes with an oracle-confirmed,
//! minor-minimal obstruction witness.

pub mod blocks;
pub mod canon;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod structure;
pub mod track;
pub mod vset;

pub use canon::{canonical_code, CanonicalCode};
pub use error::{Error, Result};
pub use graph::{parse_graph, Graph};
pub use oracle::{
    exact_pathwidth, has_minor, minimize_witness, verify_decomposition, PathDecomposition,
};
pub use structure::{recognize_pw2, Certificate, StructureReport};
pub use track::{recognize_track, TrackObstruction, TrackRepresentation};
pub use vset::VertexSet;
