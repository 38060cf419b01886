//! Vertex-minor calculus for small graphs, isotropic systems and
//! 3-uniform hypergraphs, with exhaustive checkers for the structural
//! results built on them.

pub mod equivalence;
pub mod gf2;
pub mod graph;
pub mod ground;
pub mod harness;
pub mod hypergraph;
pub mod isotropic;
pub mod theta;
pub mod words;

pub use gf2::{form_k, form_v, BitMatrix, Gf2Error, KElement, KVector, Subspace};
pub use graph::{Graph, GraphError, Split, Structure};
pub use ground::{Ground, GroundError, VertexId, MAX_VERTICES};
pub use hypergraph::{HypergraphError, Structures, ThreeUniformHypergraph, TightPath};
pub use isotropic::{GraphicPresentation, IsotropicError, IsotropicSystem, Triangle};
pub use theta::{ThetaCase, ThetaError, ThetaSpec};
pub use words::{ChordDiagram, DoubleOccurrenceWord, Multigraph, WordError};
