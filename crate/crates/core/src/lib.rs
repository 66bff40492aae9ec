//! Lattice stick presentations of spatial graphs built from arc presentations
//! of their cut-components, with certification and stick-count bounds.

pub mod arc_presentation;
pub mod bounds;
pub mod cli;
pub mod fixtures;
pub mod geometry;
pub mod graph_model;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod report;
pub mod validate;

pub use arc_presentation::{Arc, ArcPresentation, VertexLabel};
pub use graph_model::{ComponentClass, ComponentSpec, CutAttachment, GraphCensus, SpatialGraphSpec};
pub use lattice::{build_full, BuildError, BuildOutput, LatticeEmbedding, StickComplex};
