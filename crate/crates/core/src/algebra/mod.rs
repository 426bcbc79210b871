//! Atom classification, bitwise formula evaluation and boundary extraction.

mod bits;
mod brep;
mod eval;
mod matrix;
mod planar;

pub use bits::BitChain;
pub use brep::{boundary_counts, brep_extract, model_soup, BrepFace, Mesh};
pub use eval::{bind, boundary_chain, contains_outer, eval_bitwise, Bindings, SolidChain};
pub use matrix::{classify_atoms, classify_faces, smc_point_in_solid, BoolMatrix, DENSE_LIMIT};
pub use planar::{planar_model, planar_result, PlanarResult};
