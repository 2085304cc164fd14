//! Joint kernels, closures of Hom-submodules, and the submodule duality for
//! finite modules.

pub mod endo;
pub mod lattice;

pub use endo::EndLevel;
pub use lattice::{
    closure, duality_check, duality_check_abelian, joint_kernel, Closure, DualityReport, HomElement, MAX_LATTICE,
};
