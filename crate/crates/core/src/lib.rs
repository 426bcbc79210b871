//! Variadic Boolean evaluation of polyhedral solids.
//!
//! All inputs of a CSG expression are intersected once into a single space
//! arrangement. Its bounded 3-cells (atoms) are classified against every
//! input solid, any formula then reduces to bitwise operations on atom bit
//! vectors, and the boundary of a result is one sparse matrix product.

pub mod algebra;
pub mod arrangement2d;
pub mod arrangement3d;
pub mod error;
pub mod frontend;
pub mod geometry;
pub mod model;
pub mod par;
pub mod sparse;

pub use error::{Error, Result};
pub use model::LarModel;
pub use par::Parallelism;
pub use sparse::{ChainComplex3, SparseSignedMatrix};
