//! Labeled simplicial complexes with links, joins, edge subdivisions, flagness
//! and the f-, h- and gamma-invariants.

mod complex;
mod iso;
mod label;
mod poly;

pub use complex::{
    f_from_h, family_difference, h_from_f, ComplexSummary, Face, FaceFamily, LabeledComplex,
    MAX_VERTICES,
};
pub use iso::{is_isomorphic_constrained, Bijection};
pub use label::VertexLabel;
pub use poly::{GammaPoly, HPoly};
