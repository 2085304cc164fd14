//! Division modules `D_J(M, N)`, J-torsion, J-maps and essentiality.

use num_bigint::BigInt;
use num_traits::Zero;

use super::filter::{Ideal, IdealFilter};
use crate::arith::prime_divisors;
use crate::error::{Error, Result};
use crate::exactalg::{FgModule, ModuleMap, Submodule};

/// `{x ∈ N : kx ∈ M}` for a submodule `M ⊆ N` and `k ≠ 0`.
pub fn divide_integer(k: &BigInt, sub: &Submodule) -> Result<Submodule> {
    if k.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    Ok(sub.ambient().scalar_map(k).preimage(sub))
}

/// `D_I(M, N) = {x ∈ N : Ix ⊆ M}`.
pub fn divide_ideal(i: &Ideal, sub: &Submodule) -> Result<Submodule> {
    let n = sub.ambient();
    if &i.ring() != n.ring() {
        return Err(Error::RingMismatch);
    }
    if let Ideal::Integers(k) = i {
        return divide_integer(k, sub);
    }
    let gens = i.generators();
    if gens.is_empty() {
        return Err(Error::ZeroDivisor);
    }
    let mut out = Submodule::whole(n);
    for (u, v) in gens {
        out = out.intersect(&n.ring_element_map(&u, &v)?.preimage(sub));
    }
    Ok(out)
}

/// `D_J(M, N)`, realized at the filter's stabilization exponent for `N/M`.
pub fn divide_filter(j: &IdealFilter, sub: &Submodule) -> Result<Submodule> {
    match j {
        IdealFilter::Zero => Ok(Submodule::whole(sub.ambient())),
        IdealFilter::One => Ok(sub.clone()),
        _ => {
            let (q, _) = sub.quotient();
            divide_integer(&j.stabilization_exponent(&q)?, sub)
        }
    }
}

/// `D_J(image f, target f)`.
pub fn divide_filter_map(j: &IdealFilter, f: &ModuleMap) -> Result<Submodule> {
    divide_filter(j, &f.image())
}

/// The J-torsion submodule `N[J] = D_J(0, N)`.
pub fn torsion(j: &IdealFilter, n: &FgModule) -> Result<Submodule> {
    divide_filter(j, &Submodule::zero(n))
}

pub fn is_jtorsion(j: &IdealFilter, n: &FgModule) -> Result<bool> {
    Ok(torsion(j, n)?.is_whole())
}

/// `f` is a J-map when its cokernel is J-torsion.
pub fn is_jmap(j: &IdealFilter, f: &ModuleMap) -> Result<bool> {
    Ok(divide_filter_map(j, f)?.is_whole())
}

/// Essentiality of an injective J-map, decided on J-torsion: the image must
/// meet `R·x` for every `x ∈ N[J]` of prime order, and (only relevant for the
/// zero filter) the cokernel must be torsion.
pub fn is_essential(j: &IdealFilter, f: &ModuleMap) -> Result<bool> {
    if !f.is_injective() {
        return Err(Error::Precondition("essentiality needs an injective map".into()));
    }
    if !is_jmap(j, f)? {
        return Err(Error::Precondition("essentiality is decided for J-maps".into()));
    }
    let n = f.target();
    let image = f.image();
    if image.quotient().0.rank() > 0 {
        return Ok(false);
    }
    let tors = torsion(&IdealFilter::AllNonzeroIntegers, n)?.intersect(&torsion(j, n)?);
    Ok(prime_order_elements(&tors)?.iter().all(|x| {
        !Submodule::from_elements(n, std::slice::from_ref(x)).intersect(&image).is_zero()
    }))
}

/// Nonzero elements of prime order in a finite submodule.
pub fn prime_order_elements(sub: &Submodule) -> Result<Vec<Vec<BigInt>>> {
    let n = sub.ambient();
    let (m, _) = sub.to_module();
    let mut out = Vec::new();
    for p in prime_divisors(&m.torsion_exponent()) {
        let layer = n.scalar_map(&p).kernel().intersect(sub);
        for x in layer.elements()? {
            if !n.is_zero_element(&x) {
                out.push(x);
            }
        }
    }
    Ok(out)
}
