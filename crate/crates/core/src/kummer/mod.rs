//! Simulated Galois images, `H¹`, and the effective index bound.

pub mod bound;
pub mod cohomology;
pub mod instance;

pub use bound::{divisibility_index, kummer_bound, subring_index, BoundInputs, BoundReport};
pub use cohomology::{coboundary_witness, h1, is_cocycle, H1, MAX_COHOMOLOGY_SIZE};
pub use instance::{ses_cohomology_check, thm_main_containment_check, GaloisSimInstance, SesReport};
