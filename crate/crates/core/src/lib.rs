//! Decision procedures for unital relative graph C*-algebras given by a
//! finite multigraph with multiplicities in {0, 1, .., inf} and a relation
//! set S of regular vertices: finiteness and proper infiniteness of model
//! projections, the gauge-invariant ideal lattice, and semiprojectivity.

pub mod ext_nat;
pub mod graph;
pub mod ideals;
pub mod oracle;
pub mod projections;
pub mod semiproj;
pub mod vertex_set;

pub use ext_nat::{ExtNat, Multiplicity};
pub use graph::{GraphError, RelativeGraph};
pub use vertex_set::{Vertex, VertexSet};
