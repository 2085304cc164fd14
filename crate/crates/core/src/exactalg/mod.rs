//! Exact integer linear algebra and module arithmetic.

pub mod enumerate;
pub mod hom;
pub mod matrix;
pub mod module;
pub mod ring;

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

pub use enumerate::{all_submodules, cyclic_submodules};
pub use hom::{hom_module, solve_homs, HomSpace};
pub use matrix::{hnf, hnf_with_transform, snf, IntMatrix, Smith};
pub use module::{invariant_factors, DirectSum, FgModule, ModuleMap, Presented, Submodule};
pub use ring::Ring;

pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1_000_000;

static ENUMERATION_LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_ENUMERATION_LIMIT);

/// Largest number of items any brute-force enumeration may produce.
pub fn enumeration_limit() -> u64 {
    ENUMERATION_LIMIT.load(Ordering::Relaxed)
}

pub fn set_enumeration_limit(limit: u64) {
    ENUMERATION_LIMIT.store(limit, Ordering::Relaxed);
}

/// Converts a count into `usize`, refusing counts above the limit.
pub fn check_enumeration(size: &BigInt) -> Result<usize> {
    let limit = enumeration_limit();
    match size.to_u64() {
        Some(n) if n <= limit => Ok(n as usize),
        _ => Err(Error::EnumerationLimit { size: size.clone(), limit }),
    }
}

/// Kernel of a map as a module with its inclusion.
pub fn kernel(f: &ModuleMap) -> (FgModule, ModuleMap) {
    f.kernel().to_module()
}

/// Quotient of `n` by the image of `sub`, with the projection.
pub fn quotient(sub: &ModuleMap) -> (FgModule, ModuleMap) {
    sub.image().quotient()
}

/// `{x ∈ source(f) : f(x) ∈ image(sub)}`.
pub fn preimage(f: &ModuleMap, sub: &ModuleMap) -> Result<Submodule> {
    if f.target() != sub.target() {
        return Err(Error::Dimension("preimage needs maps into the same module".into()));
    }
    Ok(f.preimage(&sub.image()))
}
