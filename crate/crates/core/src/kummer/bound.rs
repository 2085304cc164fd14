//! The subring index `m`, the divisibility index of `k·Hom(X, T)`, and the
//! assembled bound `c`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::divisors;
use crate::duality::EndLevel;
use crate::error::{Error, Result};
use crate::exactalg::{hom_module, FgModule, IntMatrix};
use crate::pointed::TorsionTarget;

fn positive(name: &str, x: &BigInt) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{name} must be positive")))
    }
}

/// Smallest `m | L` such that the ring generated by `gens` contains
/// `m · M_s(Z/L)`. Returns `L` itself when nothing smaller works, since
/// `L · M_s(Z/L) = 0` lies in every ring.
pub fn subring_index(s: usize, level: &BigInt, gens: &[IntMatrix]) -> Result<BigInt> {
    positive("the level", level)?;
    for g in gens {
        if g.rows() != s || g.cols() != s {
            return Err(Error::Dimension(format!("generators must be {s}x{s}")));
        }
        if !g.determinant().gcd(level).is_one() {
            return Err(Error::Precondition("generators must be invertible mod L".into()));
        }
    }
    let ring = EndLevel::generated_by(s, level, gens)?;
    Ok(index_in(&ring, &EndLevel::full(s, level)))
}

/// Smallest `m | e` with `m · big ⊆ small`.
pub(crate) fn index_in(small: &EndLevel, big: &EndLevel) -> BigInt {
    divisors(small.level())
        .into_iter()
        .find(|m| big.generators().iter().all(|g| small.contains(&g.scale(m))))
        .unwrap_or_else(|| small.level().clone())
}

/// `[Hom(X, T) : k·Hom(X, T)]` for a finite `X`, i.e. `∏ gcd(k, dᵢ)` over
/// the invariant factors `dᵢ` of the Hom group.
pub fn divisibility_index(x: &FgModule, target: &TorsionTarget, k: &BigInt) -> Result<BigInt> {
    positive("k", k)?;
    if !x.is_finite() {
        return Err(Error::Precondition("the divisibility index needs a finite module".into()));
    }
    let layer = target.layer(&x.torsion_exponent());
    let homs = hom_module(x, &layer)?;
    Ok(homs.group().torsion_factors().iter().map(|d| d.gcd(k)).product())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundInputs {
    pub d: BigInt,
    pub n: BigInt,
    pub m: BigInt,
    /// Rank `r` of `M`.
    pub r: usize,
    /// Torsion rank `s`.
    pub s: usize,
}

impl BoundInputs {
    pub fn new(d: BigInt, n: BigInt, m: BigInt, r: usize, s: usize) -> Result<BoundInputs> {
        positive("d", &d)?;
        positive("n", &n)?;
        positive("m", &m)?;
        if s == 0 {
            return Err(Error::Precondition("the torsion rank must be positive".into()));
        }
        Ok(BoundInputs { d, n, m, r, s })
    }

    pub fn dnm(&self) -> BigInt {
        &self.d * &self.n * &self.m
    }

    /// `(dnm)^{rs}`.
    pub fn closed_form(&self) -> BigInt {
        num_traits::pow(self.dnm(), self.r * self.s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub c: BigInt,
    /// `(L', index at L')` for every divisor `L'` of `L`.
    pub per_level: Vec<(BigInt, BigInt)>,
    pub notes: Vec<String>,
}

/// `c` for `M` of rank `r` over Z: `Γ/sat(M)` is modelled at level `L` by
/// `(Z/L)^r`, and `c` is the index of `dnm·Hom((Z/L)^r, T)`.
pub fn kummer_bound(inputs: &BoundInputs, torsion: &[BigInt], level: &BigInt) -> Result<BoundReport> {
    positive("the level", level)?;
    let k = inputs.dnm();
    let target = TorsionTarget::q_mod_z(inputs.s);
    let window = |l: &BigInt| FgModule::abelian(&vec![l.clone(); inputs.r], 0);
    let c = divisibility_index(&window(level)?, &target, &k)?;
    let mut per_level = Vec::new();
    for l in divisors(level) {
        per_level.push((l.clone(), divisibility_index(&window(&l)?, &target, &k)?));
    }
    let mut notes = vec![format!("d = {}, n = {}, m = {} are user-supplied", inputs.d, inputs.n, inputs.m)];
    if !level.is_multiple_of(&k) {
        notes.push(format!("d*n*m = {k} does not divide L = {level}; c is truncated at level {level}"));
    }
    if !torsion.is_empty() {
        let t: Vec<String> = torsion.iter().map(BigInt::to_string).collect();
        notes.push(format!("torsion of M (Z/{}) lies in sat(M) and does not change c", t.join(" + Z/")));
    }
    Ok(BoundReport { c, per_level, notes })
}
