//! The Baer test for J-injectivity over the finite rings `Z/N`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;

use super::filter::IdealFilter;
use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::exactalg::FgModule;

/// Decides whether the `Z/N`-module `q` extends every homomorphism `I → q`
/// to `Z/N`, for each ideal `I = (d)` of `Z/N` in the filter.
///
/// A map `(d) → q` is fixed by the image `y` of `d`, which can be any `y`
/// with `(N/d)·y = 0`; it extends exactly when `y = d·x` for some `x ∈ q`.
pub fn baer_check(modulus: &BigInt, j: &IdealFilter, q: &FgModule) -> Result<bool> {
    if !q.ring().is_integers() {
        return Err(Error::RingMismatch);
    }
    if !q.is_finite() {
        return Err(Error::InfiniteSearch("Baer test on an infinite module".into()));
    }
    if modulus <= &BigInt::from(0) || !modulus.is_multiple_of(&q.torsion_exponent()) {
        return Err(Error::Precondition(format!("the module is not a Z/{modulus}-module")));
    }
    let elems = q.elements()?;
    for d in divisors(modulus) {
        // ideals of Z/N: (d) with d | N; (N) is the zero ideal
        let member = match j {
            IdealFilter::Zero | IdealFilter::AllNonzeroIntegers => true,
            _ => j.contains_integer(&d),
        };
        if !member {
            continue;
        }
        let ann = modulus / &d;
        let multiples: HashSet<Vec<BigInt>> = elems.iter().map(|x| q.scale(&d, x)).collect();
        for y in &elems {
            if q.is_zero_element(&q.scale(&ann, y)) && !multiples.contains(y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Baer test at the modulus `p·exponent(q)`, the natural testbed ring for
/// `p^∞`-injectivity of `q`.
pub fn baer_check_default(j: &IdealFilter, q: &FgModule) -> Result<bool> {
    let base = j.prime().cloned().unwrap_or_else(|| BigInt::from(1));
    baer_check(&(base * q.torsion_exponent()), j, q)
}
