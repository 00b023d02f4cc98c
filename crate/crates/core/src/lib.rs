//! Simultaneous geometric embeddings on integer grids.
//!
//! Several graphs share one vertex set; each vertex gets a single grid point
//! and every graph must be drawn with straight, non-crossing edges. With a
//! given mapping the vertex identities are fixed across layers; in free mode
//! every layer may choose its own bijection onto a shared point set.

pub mod certify;
pub mod cli;
pub mod error;
pub mod generate;
pub mod geom;
pub mod graph;
pub mod io;
pub mod mapped;
pub mod svg;
pub mod unmapped;

pub use error::EmbedError;
pub use geom::{GeomError, GridPoint, Orientation, Segment};
pub use graph::{Caterpillar, Edge, GraphClass, GraphError, Layer, LayeredInstance, MappingMode, PathOrder};
pub use mapped::{PointAssignment, SimultaneousEmbedding};
