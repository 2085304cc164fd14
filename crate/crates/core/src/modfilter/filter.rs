use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_power_of, is_prime, lcm_all, p_part};
use crate::error::{Error, Result};
use crate::exactalg::{hnf, FgModule, IntMatrix, Ring};

/// An ideal filter, described by generators rather than by its members.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdealFilter {
    /// Every ideal, including the zero ideal.
    Zero,
    /// Only the whole ring.
    One,
    /// Ideals containing a power of the prime `p`.
    PPower(BigInt),
    /// Ideals containing a nonzero integer.
    AllNonzeroIntegers,
    /// The filter generated by the principal ideals `sR`.
    Principal(Vec<BigInt>),
}

impl IdealFilter {
    pub fn p_power(p: impl Into<BigInt>) -> Result<IdealFilter> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(IdealFilter::PPower(p))
    }

    pub fn principal(gens: Vec<BigInt>) -> Result<IdealFilter> {
        if gens.is_empty() || gens.iter().any(Zero::is_zero) {
            return Err(Error::Precondition("principal filter generators must be nonzero".into()));
        }
        Ok(IdealFilter::Principal(gens.iter().map(|g| g.abs()).collect()))
    }

    /// Whether `k·R` belongs to the filter, for an integer `k ≥ 0`.
    pub fn contains_integer(&self, k: &BigInt) -> bool {
        let k = k.abs();
        match self {
            IdealFilter::Zero => true,
            IdealFilter::One => k.is_one(),
            IdealFilter::PPower(p) => is_power_of(&k, p),
            IdealFilter::AllNonzeroIntegers => !k.is_zero(),
            IdealFilter::Principal(s) => !k.is_zero() && lcm_all(s).is_multiple_of(&k),
        }
    }

    /// Smallest `k` such that dividing by `k` realizes division by the whole
    /// filter for any pair with quotient `q`.
    pub fn stabilization_exponent(&self, q: &FgModule) -> Result<BigInt> {
        let e = q.torsion_exponent();
        match self {
            IdealFilter::Zero => Err(Error::NoFiniteStage(self.to_string())),
            IdealFilter::One => Ok(BigInt::one()),
            IdealFilter::PPower(p) => Ok(p_part(&e, p)),
            IdealFilter::AllNonzeroIntegers => Ok(e),
            IdealFilter::Principal(s) => Ok(lcm_all(s)),
        }
    }

    /// True for the filters with the restriction-to-torsion and hull theory
    /// (`p^∞` and `∞`).
    pub fn is_torsion_filter(&self) -> bool {
        matches!(self, IdealFilter::PPower(_) | IdealFilter::AllNonzeroIntegers)
    }

    /// The prime of a `p^∞` filter.
    pub fn prime(&self) -> Option<&BigInt> {
        match self {
            IdealFilter::PPower(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for IdealFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealFilter::Zero => write!(f, "0"),
            IdealFilter::One => write!(f, "1"),
            IdealFilter::PPower(p) => write!(f, "{p}^inf"),
            IdealFilter::AllNonzeroIntegers => write!(f, "inf"),
            IdealFilter::Principal(s) => {
                let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

impl FromStr for IdealFilter {
    type Err = Error;

    /// Parses `0`, `1`, `p^inf`, `inf`, or `(s1,s2,…)`.
    fn from_str(s: &str) -> Result<IdealFilter> {
        let bad = || Error::Precondition(format!("unrecognised filter `{s}`"));
        let t = s.trim();
        match t {
            "0" => return Ok(IdealFilter::Zero),
            "1" => return Ok(IdealFilter::One),
            "inf" | "∞" => return Ok(IdealFilter::AllNonzeroIntegers),
            _ => {}
        }
        if let Some(p) = t.strip_suffix("^inf").or_else(|| t.strip_suffix("^∞")) {
            return IdealFilter::p_power(p.parse::<BigInt>().map_err(|_| bad())?);
        }
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let gens = inner
                .split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return IdealFilter::principal(gens);
        }
        Err(bad())
    }
}

/// An ideal of `Z` (by its generator) or of a quadratic order (by a Hermite
/// basis in the Z-basis `(1, ω)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ideal {
    Integers(BigInt),
    Quadratic { ring: Ring, basis: IntMatrix },
}

impl Ideal {
    pub fn integer(k: impl Into<BigInt>) -> Ideal {
        Ideal::Integers(k.into().abs())
    }

    /// The ideal of `ring` generated by the integer `k`.
    pub fn principal_integer(ring: &Ring, k: &BigInt) -> Ideal {
        match ring {
            Ring::Integers => Ideal::Integers(k.abs()),
            Ring::QuadraticOrder { .. } => Ideal::Quadratic {
                ring: ring.clone(),
                basis: hnf(&IntMatrix::identity(2).scale(k)).without_zero_rows(),
            },
        }
    }

    /// An ideal of a quadratic order from Z-lattice generators `(a, b) ↦ a + bω`.
    pub fn quadratic(ring: &Ring, gens: &IntMatrix) -> Result<Ideal> {
        let w = ring.omega_matrix().ok_or(Error::RingMismatch)?;
        if gens.cols() != 2 {
            return Err(Error::Dimension("ideal generators have two coordinates".into()));
        }
        let basis = hnf(gens).without_zero_rows();
        let closed = hnf(&basis.vstack(&basis.mul(&w))).without_zero_rows();
        if closed != basis {
            return Err(Error::Precondition("lattice is not closed under multiplication by w".into()));
        }
        Ok(Ideal::Quadratic { ring: ring.clone(), basis })
    }

    pub fn ring(&self) -> Ring {
        match self {
            Ideal::Integers(_) => Ring::Integers,
            Ideal::Quadratic { ring, .. } => ring.clone(),
        }
    }

    /// Generator of `I ∩ Z` (0 for the zero ideal).
    pub fn integer_part(&self) -> BigInt {
        match self {
            Ideal::Integers(k) => k.clone(),
            Ideal::Quadratic { basis, .. } => {
                if basis.rows() < 2 {
                    return BigInt::zero();
                }
                let (a, b, c) = (&basis[(0, 0)], &basis[(0, 1)], &basis[(1, 1)]);
                a * (c / b.gcd(c))
            }
        }
    }

    pub fn is_whole(&self) -> bool {
        match self {
            Ideal::Integers(k) => k.is_one(),
            Ideal::Quadratic { basis, .. } => basis == &IntMatrix::identity(2),
        }
    }

    /// Ring elements `(u, v) ↦ u + vω` spanning the ideal.
    pub fn generators(&self) -> Vec<(BigInt, BigInt)> {
        match self {
            Ideal::Integers(k) => vec![(k.clone(), BigInt::zero())],
            Ideal::Quadratic { basis, .. } => {
                (0..basis.rows()).map(|r| (basis[(r, 0)].clone(), basis[(r, 1)].clone())).collect()
            }
        }
    }
}

/// Membership of an ideal in a filter.
pub fn filter_member(j: &IdealFilter, i: &Ideal) -> bool {
    match j {
        IdealFilter::Zero => true,
        IdealFilter::One => i.is_whole(),
        _ => j.contains_integer(&i.integer_part()),
    }
}
