//! Moore bounds, Moore-tree coverage, exact and sampled Cheeger constants,
//! adjacency spectra and cage constructions for regular graphs of given girth.

pub mod catalog;
pub mod cheeger;
pub mod error;
pub mod formats;
pub mod graph;
pub mod lemmas;
pub mod moore;
pub mod report;
pub mod spectral;
mod subsets;

pub use error::{Error, Result};
pub use graph::{Edge, Girth, Graph, Multipole, VertexSet};
pub use subsets::MAX_WALK_ORDER;
