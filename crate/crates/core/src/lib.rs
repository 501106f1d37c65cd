//! N-complexes of tensor fields with mixed Young symmetry on `R^D`, computed with
//! exact rational arithmetic.

pub mod algebra;
pub mod cohomology;
pub mod diagrams;
pub mod fields;
pub mod gauge;
pub mod json;
pub mod error;
pub mod linalg;
pub mod multiforms;
mod memo;
pub mod perm;
pub mod poly;
pub mod probe;
pub mod tensor;

pub use diagrams::Diagram;
pub use error::{Error, Result};
pub use tensor::{Tensor, Variance};
