//! Matching-free complexes `MF^q(G)` of graphs, with a focus on whisker graphs:
//! construction, even-connection graphs, shelling certificates, exact homology,
//! Cohen-Macaulayness and depth.

pub mod error;
pub mod even_conn;
pub mod graph;
pub mod homology;
pub mod matching_free;
pub mod shelling;
pub mod simplicial;
pub mod theorems;
pub mod vset;

pub use error::{Error, Result};
pub use graph::{ExtNat, Graph, GraphStats, Matching, WhiskerGraph};
pub use simplicial::SimplicialComplex;
pub use vset::VertexSet;
