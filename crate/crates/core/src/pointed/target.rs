//! The torsion target `T = (Q/Z)^s` or `(Z[1/p]/Z)^s` and its finite layers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{is_power_of, is_prime, p_part};
use crate::error::{Error, Result};
use crate::exactalg::{FgModule, IntMatrix, Presented, Ring};
use crate::modfilter::IdealFilter;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    QmodZ,
    Prufer(BigInt),
}

/// `T` with `s` coordinates; over a quadratic order ω acts on `T` through an
/// integer `s × s` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionTarget {
    ring: Ring,
    s: usize,
    flavor: Flavor,
    action: Option<IntMatrix>,
}

impl fmt::Display for TorsionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.flavor {
            Flavor::QmodZ => write!(f, "(Q/Z)^{}", self.s),
            Flavor::Prufer(p) => write!(f, "(Z[1/{p}]/Z)^{}", self.s),
        }
    }
}

/// Reduces a rational into `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl TorsionTarget {
    pub fn new(ring: Ring, s: usize, flavor: Flavor, action: Option<IntMatrix>) -> Result<TorsionTarget> {
        if let Flavor::Prufer(p) = &flavor {
            if !is_prime(p) {
                return Err(Error::InvalidTarget(format!("{p} is not prime")));
            }
        }
        match (&ring, &action) {
            (Ring::Integers, Some(_)) => {
                return Err(Error::InvalidTarget("an action was given over the integers".into()))
            }
            (Ring::QuadraticOrder { .. }, None) => {
                return Err(Error::InvalidTarget("a quadratic order needs an action on T".into()))
            }
            (_, Some(a)) => {
                if a.rows() != s || a.cols() != s {
                    return Err(Error::InvalidTarget(format!("action must be {s}x{s}")));
                }
                if !ring.minimal_polynomial_at(a).expect("quadratic").is_zero() {
                    return Err(Error::InvalidTarget("w^2 - t w + n does not vanish on T".into()));
                }
            }
            _ => {}
        }
        Ok(TorsionTarget { ring, s, flavor, action })
    }

    pub fn q_mod_z(s: usize) -> TorsionTarget {
        TorsionTarget { ring: Ring::Integers, s, flavor: Flavor::QmodZ, action: None }
    }

    pub fn prufer(p: impl Into<BigInt>, s: usize) -> Result<TorsionTarget> {
        TorsionTarget::new(Ring::Integers, s, Flavor::Prufer(p.into()), None)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn action(&self) -> Option<&IntMatrix> {
        self.action.as_ref()
    }

    /// `T` must be J-torsion and J-injective for the filter.
    pub fn check_filter(&self, j: &IdealFilter) -> Result<()> {
        match (j, &self.flavor) {
            (IdealFilter::AllNonzeroIntegers, _) => Ok(()),
            (IdealFilter::PPower(p), Flavor::Prufer(q)) if p == q => Ok(()),
            (IdealFilter::PPower(p), _) => Err(Error::InvalidTarget(format!(
                "{self} is not {p}^inf-torsion; use the Prufer target at {p}"
            ))),
            _ => Err(Error::UnsupportedFilter(j.to_string())),
        }
    }

    /// The part of `L` visible in `T`: `L` itself, or its `p`-part.
    pub fn effective_level(&self, level: &BigInt) -> BigInt {
        match &self.flavor {
            Flavor::QmodZ => level.clone(),
            Flavor::Prufer(p) => p_part(level, p),
        }
    }

    /// `T[L] ≅ (Z/L)^s`, coordinate `x` standing for `x/L`.
    pub fn layer(&self, level: &BigInt) -> FgModule {
        self.layer_presented(level).module
    }

    pub(crate) fn layer_presented(&self, level: &BigInt) -> Presented {
        let l = self.effective_level(level);
        let rel = IntMatrix::identity(self.s).scale(&l);
        FgModule::from_relations(self.ring.clone(), self.s, &rel, self.action.as_ref()).expect("T[L] is a valid module")
    }

    /// Canonical representative of an element.
    pub fn normalize(&self, t: &[BigRational]) -> Result<Vec<BigRational>> {
        if t.len() != self.s {
            return Err(Error::Dimension(format!("T has {} coordinates", self.s)));
        }
        if let Flavor::Prufer(p) = &self.flavor {
            if let Some(x) = t.iter().find(|x| !is_power_of(x.denom(), p)) {
                return Err(Error::InvalidTarget(format!("{x} is not in Z[1/{p}]/Z")));
            }
        }
        Ok(t.iter().map(frac).collect())
    }

    pub fn zero(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.s]
    }

    pub fn add(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| frac(&(x + y))).collect()
    }

    pub fn neg(&self, a: &[BigRational]) -> Vec<BigRational> {
        a.iter().map(|x| frac(&-x)).collect()
    }

    pub fn is_zero(&self, a: &[BigRational]) -> bool {
        a.iter().all(|x| x.is_integer())
    }

    /// Additive order of an element.
    pub fn order(&self, a: &[BigRational]) -> BigInt {
        a.iter().fold(BigInt::one(), |acc, x| acc.lcm(frac(x).denom()))
    }

    /// Coordinates of `t` in `T[L]`; `None` if `t ∉ T[L]`.
    pub fn to_layer(&self, t: &[BigRational], level: &BigInt) -> Option<Vec<BigInt>> {
        let l = self.effective_level(level);
        let raw: Vec<BigInt> = t
            .iter()
            .map(|x| {
                let y = x * BigRational::from_integer(l.clone());
                y.is_integer().then(|| y.to_integer().mod_floor(&l))
            })
            .collect::<Option<_>>()?;
        let p = self.layer_presented(level);
        Some(p.module.reduce(&p.to_canon.apply(&raw)))
    }

    /// Inverse of [`to_layer`](Self::to_layer) on layer coordinates.
    pub fn from_layer(&self, v: &[BigInt], level: &BigInt) -> Vec<BigRational> {
        let l = self.effective_level(level);
        let raw = self.layer_presented(level).from_canon.apply(v);
        raw.into_iter().map(|x| frac(&BigRational::new(x, l.clone()))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization_is_canonical() {
        let t = TorsionTarget::q_mod_z(2);
        assert_eq!(t.normalize(&[q(7, 6), q(-1, 2)]).unwrap(), vec![q(1, 6), q(1, 2)]);
        assert_eq!(t.order(&[q(1, 6), q(1, 4)]), BigInt::from(12));
        let p = TorsionTarget::prufer(2, 1).unwrap();
        assert!(p.normalize(&[q(1, 3)]).is_err());
    }

    #[test]
    fn layers_round_trip() {
        let t = TorsionTarget::q_mod_z(1);
        let l = BigInt::from(12);
        let v = t.to_layer(&[q(5, 6)], &l).unwrap();
        assert_eq!(v, vec![BigInt::from(10)]);
        assert_eq!(t.from_layer(&v, &l), vec![q(5, 6)]);
        assert!(t.to_layer(&[q(1, 5)], &l).is_none());
        let p = TorsionTarget::prufer(2, 1).unwrap();
        assert_eq!(p.layer(&l), FgModule::abelian_u64(&[4], 0));
    }

    #[test]
    fn filter_compatibility() {
        let two = IdealFilter::p_power(2).unwrap();
        assert!(TorsionTarget::q_mod_z(1).check_filter(&two).is_err());
        assert!(TorsionTarget::prufer(2, 1).unwrap().check_filter(&two).is_ok());
        assert!(TorsionTarget::prufer(3, 1).unwrap().check_filter(&two).is_err());
        assert!(TorsionTarget::q_mod_z(1).check_filter(&IdealFilter::AllNonzeroIntegers).is_ok());
    }
}
