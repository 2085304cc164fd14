//! Automorphism groups of (J,T)-extensions and their exact sequence.

pub mod group;
pub mod sequence;

pub use group::{AutGroup, MAX_GROUP_ORDER};
pub use sequence::{
    aut_fixing_base_and_torsion, aut_torsion_quotient, exact_sequence, ExactSequenceReport, KernelGroup,
    TorsionQuotient,
};
