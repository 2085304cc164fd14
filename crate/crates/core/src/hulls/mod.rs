//! J-hulls, maximal (J,T)-extensions and normality, computed inside finite
//! truncation windows.

pub mod hull;
pub mod normal;

pub use hull::{jhull, maximal_extension, DivisibleHull, HullElement, HullTorsion, HullWindow};
pub use normal::{embeddings_at_level, is_normal, required_level, Embeddings, NormalityVerdict};
