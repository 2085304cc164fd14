//! Divisible hulls, stored as finite data plus a rule for their truncations.
//!
//! A hull `Γ` is `core_loc ⊕ tors` where `core = residual ⊕ Z^r` is the
//! finitely generated part (localized at the filter on its free summand)
//! and `tors` is a product of Prüfer coordinates or a torsion target `T`.
//! The window of level `L` is `(1/L)Z^r ⊕ residual ⊕ tors[L]`, written in
//! integer coordinates (`x` in a free slot stands for `x/L`).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{is_power_of, lcm_all, p_part, prime_divisors, valuation};
use crate::error::{Error, Result};
use crate::exactalg::{FgModule, IntMatrix, ModuleMap, Presented, Ring};
use crate::modfilter::IdealFilter;
use crate::pointed::{frac, saturate, PointedModule, TorsionTarget};

/// The torsion summand of a hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullTorsion {
    /// One Prüfer coordinate `Z[1/p]/Z` per entry, listed by prime.
    Prufer(Vec<BigInt>),
    /// A whole torsion target.
    Target(TorsionTarget),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibleHull {
    filter: IdealFilter,
    core: FgModule,
    torsion: HullTorsion,
    source: FgModule,
    core_map: ModuleMap,
    torsion_values: Vec<Vec<BigRational>>,
    min_level: BigInt,
}

/// A truncation of a hull, with the embedding of the source.
#[derive(Clone, Debug)]
pub struct HullWindow {
    pub level: BigInt,
    pub module: FgModule,
    /// The window pointed by the identity on its torsion layer (only for
    /// hulls built over a torsion target).
    pub pointed: Option<PointedModule>,
    pub iota: ModuleMap,
    pub core_inj: ModuleMap,
    pub torsion_inj: ModuleMap,
}

/// Image of one source generator, in hull coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullElement {
    pub free: Vec<BigInt>,
    pub residual: Vec<BigInt>,
    pub torsion: Vec<BigRational>,
}

impl fmt::Display for DivisibleHull {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let loc = match &self.filter {
            IdealFilter::PPower(p) => format!("Z[1/{p}]"),
            _ => "Q".to_string(),
        };
        let mut parts = Vec::new();
        if self.localized_rank() > 0 {
            parts.push(format!("{loc}^{}", self.localized_rank()));
        }
        let residual = self.residual();
        if !residual.is_zero_module() {
            parts.push(format!("{residual:?}"));
        }
        match &self.torsion {
            HullTorsion::Prufer(ps) => {
                let mut i = 0;
                while i < ps.len() {
                    let k = ps[i..].iter().take_while(|q| *q == &ps[i]).count();
                    parts.push(format!("(Z[1/{}]/Z)^{k}", ps[i]));
                    i += k;
                }
            }
            HullTorsion::Target(t) => parts.push(t.to_string()),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn diagonal_presentation(moduli: &[BigInt], rank: usize) -> Presented {
    let g = moduli.len() + rank;
    let mut rel = IntMatrix::zeros(moduli.len(), g);
    for (i, d) in moduli.iter().enumerate() {
        rel[(i, i)] = d.clone();
    }
    FgModule::from_relations(Ring::Integers, g, &rel, None).expect("diagonal presentation")
}

/// Per torsion generator: (Prüfer block, value) pairs.
type PrimeValues = Vec<(usize, BigRational)>;

/// The `J`-hull of a finitely generated abelian group, for `J = p^∞` or `∞`.
pub fn jhull(j: &IdealFilter, m: &FgModule) -> Result<DivisibleHull> {
    if !m.ring().is_integers() {
        return Err(Error::RingMismatch);
    }
    let r = m.rank();
    let tf = m.torsion_factors();
    let (core_p, primes, values): (Presented, Vec<BigInt>, Vec<PrimeValues>) = match j {
        IdealFilter::PPower(p) => {
            let residual: Vec<BigInt> = tf.iter().map(|d| d / p_part(d, p)).collect();
            let mut primes = Vec::new();
            let mut values = Vec::new();
            for d in tf {
                let pe = p_part(d, p);
                if pe.is_one() {
                    values.push(vec![]);
                } else {
                    values.push(vec![(primes.len(), BigRational::new(BigInt::one(), pe))]);
                    primes.push(p.clone());
                }
            }
            (diagonal_presentation(&residual, r), primes, values)
        }
        IdealFilter::AllNonzeroIntegers => {
            let mut coords: Vec<(BigInt, usize, BigRational)> = Vec::new();
            for (i, d) in tf.iter().enumerate() {
                for q in prime_divisors(d) {
                    let qe = p_part(d, &q);
                    coords.push((q, i, BigRational::new(BigInt::one(), qe)));
                }
            }
            coords.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
            let mut values = vec![Vec::new(); tf.len()];
            for (c, (_, i, v)) in coords.iter().enumerate() {
                values[*i].push((c, v.clone()));
            }
            let primes = coords.into_iter().map(|c| c.0).collect();
            (diagonal_presentation(&vec![BigInt::one(); tf.len()], r), primes, values)
        }
        other => return Err(Error::UnsupportedFilter(other.to_string())),
    };
    let core = core_p.module.clone();
    let core_map = ModuleMap::new(m.clone(), core.clone(), core_p.to_canon.clone())?;
    let mut torsion_values = Vec::new();
    for i in 0..m.ngens() {
        let mut v = vec![BigRational::zero(); primes.len()];
        for (c, x) in values.get(i).filter(|_| i < tf.len()).into_iter().flatten() {
            v[*c] = x.clone();
        }
        torsion_values.push(v);
    }
    let parts: Vec<BigInt> = tf
        .iter()
        .map(|d| match j {
            IdealFilter::PPower(p) => p_part(d, p),
            _ => d.clone(),
        })
        .collect();
    let min_level = lcm_all(&parts);
    Ok(DivisibleHull {
        filter: j.clone(),
        core,
        torsion: HullTorsion::Prufer(primes),
        source: m.clone(),
        core_map,
        torsion_values,
        min_level,
    })
}

/// The maximal (J,T)-extension `Γ = hull(M/M[J]) ⊕ T` of a pointed module,
/// embedded by `x ↦ ([x], ρ(x))`.
pub fn maximal_extension(m: &PointedModule) -> Result<DivisibleHull> {
    let s = saturate(m);
    let core = s.sat.free_part().clone();
    if !core.ring().is_integers() && core.torsion_len() > 0 {
        return Err(Error::Precondition(
            "over a quadratic order the torsion-free quotient must have no residual torsion".into(),
        ));
    }
    Ok(DivisibleHull {
        filter: m.filter().clone(),
        core,
        torsion: HullTorsion::Target(m.target().clone()),
        source: m.module().clone(),
        core_map: s.proj,
        torsion_values: m.retraction_values().to_vec(),
        min_level: m.level(),
    })
}

impl DivisibleHull {
    pub fn filter(&self) -> &IdealFilter {
        &self.filter
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    /// Number of localized free coordinates (`Z[1/p]` or `Q`), as a Z-rank.
    pub fn localized_rank(&self) -> usize {
        self.core.rank()
    }

    /// Number of Prüfer (or `T`) coordinates.
    pub fn prufer_count(&self) -> usize {
        match &self.torsion {
            HullTorsion::Prufer(ps) => ps.len(),
            HullTorsion::Target(t) => t.s(),
        }
    }

    pub fn torsion(&self) -> &HullTorsion {
        &self.torsion
    }

    /// The finite summand carried verbatim.
    pub fn residual(&self) -> FgModule {
        FgModule::abelian(self.core.torsion_factors(), 0).expect("finite module")
    }

    pub fn min_level(&self) -> &BigInt {
        &self.min_level
    }

    /// The embedding, generator by generator.
    pub fn embedding(&self) -> Vec<HullElement> {
        let k = self.core.torsion_len();
        (0..self.source.ngens())
            .map(|i| {
                let c = self.core_map.apply(&self.source.unit_vector(i));
                HullElement { residual: c[..k].to_vec(), free: c[k..].to_vec(), torsion: self.torsion_values[i].clone() }
            })
            .collect()
    }

    fn effective(&self, level: &BigInt, coord_prime: Option<&BigInt>) -> BigInt {
        match coord_prime {
            Some(p) => p_part(level, p),
            None => level.clone(),
        }
    }

    /// Checks that `L` is a legal level for this hull.
    pub fn check_level(&self, level: &BigInt) -> Result<()> {
        if level < &BigInt::one() {
            return Err(Error::Precondition("levels are positive".into()));
        }
        if let IdealFilter::PPower(p) = &self.filter {
            if !is_power_of(level, p) {
                return Err(Error::Precondition(format!("level {level} is not a power of {p}")));
            }
        }
        if !level.is_multiple_of(&self.min_level) {
            return Err(Error::LevelTooSmall { given: level.clone(), required: self.min_level.clone() });
        }
        Ok(())
    }

    /// The window `(1/L)Z^r ⊕ residual ⊕ tors[L]` and the embedding into it.
    pub fn window(&self, level: &BigInt) -> Result<HullWindow> {
        self.check_level(level)?;
        let (layer, raw_rows, to_canon): (FgModule, Vec<Vec<BigInt>>, IntMatrix) = match &self.torsion {
            HullTorsion::Prufer(ps) => {
                let moduli: Vec<BigInt> = ps.iter().map(|p| self.effective(level, Some(p))).collect();
                let pres = diagonal_presentation(&moduli, 0);
                let rows = self
                    .torsion_values
                    .iter()
                    .map(|v| {
                        v.iter()
                            .zip(&moduli)
                            .map(|(x, l)| {
                                let y = x * BigRational::from_integer(l.clone());
                                debug_assert!(y.is_integer());
                                y.to_integer().mod_floor(l)
                            })
                            .collect()
                    })
                    .collect();
                (pres.module, rows, pres.to_canon)
            }
            HullTorsion::Target(t) => {
                let layer = t.layer(level);
                let rows = self
                    .torsion_values
                    .iter()
                    .map(|v| t.to_layer(v, level).expect("level covers the retraction"))
                    .collect();
                let n = layer.ngens();
                (layer, rows, IntMatrix::identity(n))
            }
        };
        let tors_rows: Vec<Vec<BigInt>> = raw_rows.iter().map(|r| to_canon.apply(r)).collect();
        let tors_map =
            ModuleMap::new(self.source.clone(), layer.clone(), IntMatrix::from_rows(layer.ngens(), tors_rows)?)?;
        let k = self.core.torsion_len();
        let scale: Vec<BigInt> =
            (0..self.core.ngens()).map(|i| if i < k { BigInt::one() } else { level.clone() }).collect();
        let scale = ModuleMap::new(self.core.clone(), self.core.clone(), IntMatrix::diagonal(&scale))?;
        let ds = self.core.direct_sum(&layer)?;
        let [core_inj, torsion_inj] = ds.inj;
        let iota = self.core_map.then(&scale)?.then(&core_inj)?.add(&tors_map.then(&torsion_inj)?);
        let pointed = match &self.torsion {
            HullTorsion::Target(t) => {
                let l = t.effective_level(level);
                let pairs: Vec<(Vec<BigInt>, Vec<BigRational>)> = (0..layer.ngens())
                    .map(|c| {
                        let e = layer.unit_vector(c);
                        (torsion_inj.apply(&e), t.from_layer(&e, &l))
                    })
                    .collect();
                Some(PointedModule::new(&self.filter, t, &ds.module, &pairs)?)
            }
            HullTorsion::Prufer(_) => None,
        };
        Ok(HullWindow { level: level.clone(), module: ds.module, pointed, iota, core_inj, torsion_inj })
    }

    /// The smallest legal level that is a multiple of `k`.
    pub fn level_for(&self, k: &BigInt) -> BigInt {
        let base = self.min_level.lcm(k);
        match &self.filter {
            IdealFilter::PPower(p) => {
                let mut l = BigInt::one();
                while !l.is_multiple_of(&base) {
                    l *= p;
                }
                l
            }
            _ => base,
        }
    }

    /// `p`-adic valuation bookkeeping: the exponent of `p` in the minimal level.
    pub fn min_level_valuation(&self, p: &BigInt) -> u32 {
        valuation(&self.min_level, p)
    }

    /// `T`, when the hull was built over a torsion target.
    pub fn target(&self) -> Option<&TorsionTarget> {
        match &self.torsion {
            HullTorsion::Target(t) => Some(t),
            HullTorsion::Prufer(_) => None,
        }
    }

    /// Reduces a torsion coordinate vector to canonical form.
    pub fn normalize_torsion(&self, v: &[BigRational]) -> Vec<BigRational> {
        v.iter().map(frac).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modfilter::is_essential;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn two() -> IdealFilter {
        IdealFilter::p_power(2).unwrap()
    }

    #[test]
    fn hull_shape_for_p_power() {
        // Z^2 ⊕ Z/2 ⊕ Z/12 ⊕ Z/3 at 2^∞: two Prüfer coordinates, residual Z/3 ⊕ Z/3
        let m = FgModule::abelian_u64(&[2, 12, 3], 2);
        let h = jhull(&two(), &m).unwrap();
        assert_eq!(h.localized_rank(), 2);
        assert_eq!(h.prufer_count(), 2);
        assert_eq!(h.residual(), FgModule::abelian_u64(&[3, 3], 0));
        assert_eq!(h.to_string(), "Z[1/2]^2 + Z/3 + Z/3 + (Z[1/2]/Z)^2");
        let w = h.window(&b(16)).unwrap();
        assert!(w.iota.is_injective());
        assert!(is_essential(&IdealFilter::AllNonzeroIntegers, &w.iota).unwrap());
    }

    #[test]
    fn odd_torsion_is_its_own_hull_at_two() {
        let m = FgModule::abelian_u64(&[3], 0);
        let h = jhull(&two(), &m).unwrap();
        assert_eq!(h.to_string(), "Z/3");
        assert!(h.window(&b(1)).unwrap().iota.is_isomorphism());
    }

    #[test]
    fn hull_of_zero() {
        let z = FgModule::zero(Ring::Integers);
        let h = jhull(&IdealFilter::AllNonzeroIntegers, &z).unwrap();
        assert_eq!(h.to_string(), "0");
    }

    #[test]
    fn infinity_hull_splits_by_prime() {
        let m = FgModule::abelian_u64(&[6], 1);
        let h = jhull(&IdealFilter::AllNonzeroIntegers, &m).unwrap();
        assert_eq!(h.to_string(), "Q^1 + (Z[1/2]/Z)^1 + (Z[1/3]/Z)^1");
        let w = h.window(&b(6)).unwrap();
        assert!(is_essential(&IdealFilter::AllNonzeroIntegers, &w.iota).unwrap());
        assert!(matches!(h.window(&b(2)), Err(Error::LevelTooSmall { .. })));
    }

    #[test]
    fn level_checks() {
        let h = jhull(&two(), &FgModule::abelian_u64(&[4], 0)).unwrap();
        assert!(matches!(h.window(&b(2)), Err(Error::LevelTooSmall { .. })));
        assert!(h.window(&b(12)).is_err());
        assert_eq!(h.level_for(&b(2)), b(4));
        assert!(jhull(&IdealFilter::One, &FgModule::abelian_u64(&[4], 0)).is_err());
    }

    #[test]
    fn maximal_extension_of_z() {
        let z = FgModule::abelian_u64(&[], 1);
        let t = TorsionTarget::prufer(2, 1).unwrap();
        let m = PointedModule::unpointed(&two(), &t, &z).unwrap();
        let g = maximal_extension(&m).unwrap();
        assert_eq!(g.to_string(), "Z[1/2]^1 + (Z[1/2]/Z)^1");
    }

    #[test]
    fn maximal_extension_of_torsion_is_target() {
        let t = TorsionTarget::prufer(2, 1).unwrap();
        let z4 = FgModule::abelian_u64(&[4], 0);
        let m = PointedModule::new(&two(), &t, &z4, &[(vec![b(1)], vec![BigRational::new(b(1), b(4))])]).unwrap();
        let g = maximal_extension(&m).unwrap();
        assert_eq!(g.to_string(), "(Z[1/2]/Z)^1");
        let w = g.window(&b(8)).unwrap();
        assert_eq!(w.iota.matrix(), &IntMatrix::from_i64(1, 1, &[2]));
    }
}
