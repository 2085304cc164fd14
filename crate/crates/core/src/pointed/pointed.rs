//! T-pointed modules, their maps, and (J,T)-extensions.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::target::TorsionTarget;
use crate::error::{Error, Result};
use crate::exactalg::matrix::solve_mod;
use crate::exactalg::{solve_homs, FgModule, ModuleMap, Submodule};
use crate::modfilter::{divide_filter, is_jmap, torsion, IdealFilter};

/// A module `M` with an injective homomorphism `s: M[J] ↪ T`.
///
/// Besides `s` the module keeps an R-linear retraction `ρ: M → T` extending
/// it, which is what makes the saturation and the hull embeddings explicit.
#[derive(Clone)]
pub struct PointedModule {
    filter: IdealFilter,
    target: TorsionTarget,
    module: FgModule,
    tors: Submodule,
    /// `(x, s(x))` for the canonical generators `x` of `M[J]`.
    pointing: Vec<(Vec<BigInt>, Vec<BigRational>)>,
    /// `ρ(eᵢ)` for the canonical generators of `M`.
    rho: Vec<Vec<BigRational>>,
}

impl PartialEq for PointedModule {
    fn eq(&self, other: &Self) -> bool {
        self.filter == other.filter
            && self.target == other.target
            && self.module == other.module
            && self.pointing == other.pointing
    }
}

impl Eq for PointedModule {}

impl fmt::Debug for PointedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} pointed into {} by [", self.module, self.target)?;
        for (i, (x, t)) in self.pointing.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let ts: Vec<String> = t.iter().map(ToString::to_string).collect();
            write!(f, "{x:?} -> ({})", ts.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Coordinates of `x` in the source of an injective map, if it is in the image.
pub(crate) fn coords_in(inc: &ModuleMap, x: &[BigInt]) -> Option<Vec<BigInt>> {
    let y = solve_mod(inc.matrix(), &inc.target().moduli(), x)?;
    Some(inc.source().reduce(&y))
}

fn lcm_denominators<'a>(ts: impl IntoIterator<Item = &'a Vec<BigRational>>) -> BigInt {
    use num_integer::Integer;
    ts.into_iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

impl PointedModule {
    /// Builds the pointing from `(x, s(x))` pairs; the `x` must generate
    /// `M[J]` and the assignment must extend to an injective R-linear map.
    pub fn new(
        filter: &IdealFilter,
        target: &TorsionTarget,
        module: &FgModule,
        pairs: &[(Vec<BigInt>, Vec<BigRational>)],
    ) -> Result<PointedModule> {
        target.check_filter(filter)?;
        if module.ring() != target.ring() {
            return Err(Error::RingMismatch);
        }
        let tors = torsion(filter, module)?;
        let (tm, inc) = tors.to_module();
        let mut normalized = Vec::with_capacity(pairs.len());
        for (x, t) in pairs {
            if x.len() != module.ngens() {
                return Err(Error::Dimension(format!("pointing element {x:?} has the wrong length")));
            }
            let t = target.normalize(t)?;
            let y = coords_in(&inc, x).ok_or_else(|| {
                Error::NonInjectivePointing(format!("{x:?} is not in the J-torsion"))
            })?;
            let ox = tm.element_order(&y).expect("torsion element");
            let ot = target.order(&t);
            if ot != ox {
                return Err(Error::NonInjectivePointing(format!(
                    "{x:?} has order {ox} but its image has order {ot}"
                )));
            }
            normalized.push((y, t));
        }
        let span = Submodule::from_elements(module, &pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
        if span != tors {
            return Err(Error::NonInjectivePointing("the pointed elements do not generate M[J]".into()));
        }
        let level = lcm_denominators(normalized.iter().map(|p| &p.1)) * tm.torsion_exponent();
        let layer = target.layer(&level);
        let values: Vec<(Vec<BigInt>, Vec<BigInt>)> = normalized
            .iter()
            .map(|(y, t)| (y.clone(), target.to_layer(t, &level).expect("level covers denominators")))
            .collect();
        let sols = solve_homs(&tm, &layer, &values)?
            .ok_or_else(|| Error::NonInjectivePointing("the assignment is not a homomorphism".into()))?;
        let s_map = sols.particular();
        if tm.order().is_some_and(|o| o <= BigInt::from(crate::exactalg::enumeration_limit())) {
            for y in tm.elements()? {
                if !tm.is_zero_element(&y) && layer.is_zero_element(&s_map.apply(&y)) {
                    return Err(Error::NonInjectivePointing(format!("{:?} maps to 0", inc.apply(&y))));
                }
            }
        } else if !s_map.is_injective() {
            return Err(Error::NonInjectivePointing("the pointing has a kernel".into()));
        }
        let pointing: Vec<(Vec<BigInt>, Vec<BigRational>)> = (0..tm.ngens())
            .map(|k| {
                let e = tm.unit_vector(k);
                (inc.apply(&e), target.from_layer(&s_map.apply(&e), &level))
            })
            .collect();
        let rho = Self::retraction(filter, target, module, &pointing, &level)?;
        Ok(PointedModule { filter: filter.clone(), target: target.clone(), module: module.clone(), tors, pointing, rho })
    }

    /// A module with zero J-torsion (nothing to point).
    pub fn unpointed(filter: &IdealFilter, target: &TorsionTarget, module: &FgModule) -> Result<PointedModule> {
        PointedModule::new(filter, target, module, &[])
    }

    /// An R-linear `ρ: M → T` extending the pointing, searched in the layers
    /// `T[L·m]` for small multipliers `m`.
    fn retraction(
        filter: &IdealFilter,
        target: &TorsionTarget,
        module: &FgModule,
        pointing: &[(Vec<BigInt>, Vec<BigRational>)],
        level: &BigInt,
    ) -> Result<Vec<Vec<BigRational>>> {
        let multipliers: Vec<BigInt> = match filter {
            IdealFilter::PPower(p) => (0..8u32).map(|k| num_traits::pow(p.clone(), k as usize)).collect(),
            _ => (1..=36u32).map(BigInt::from).collect(),
        };
        for m in multipliers {
            let l = level * &m;
            let layer = target.layer(&l);
            let values: Vec<(Vec<BigInt>, Vec<BigInt>)> = pointing
                .iter()
                .map(|(x, t)| (x.clone(), target.to_layer(t, &l).expect("level covers denominators")))
                .collect();
            if let Some(sol) = solve_homs(module, &layer, &values)? {
                let r = sol.particular();
                return Ok((0..module.ngens())
                    .map(|i| target.from_layer(&r.apply(&module.unit_vector(i)), &l))
                    .collect());
            }
        }
        Err(Error::NonInjectivePointing("the pointing has no R-linear extension to M".into()))
    }

    pub fn filter(&self) -> &IdealFilter {
        &self.filter
    }

    pub fn target(&self) -> &TorsionTarget {
        &self.target
    }

    pub fn module(&self) -> &FgModule {
        &self.module
    }

    /// `M[J]` as a submodule.
    pub fn torsion(&self) -> &Submodule {
        &self.tors
    }

    pub fn pointing(&self) -> &[(Vec<BigInt>, Vec<BigRational>)] {
        &self.pointing
    }

    pub fn retraction_values(&self) -> &[Vec<BigRational>] {
        &self.rho
    }

    /// `ρ(x)`; equals `s(x)` on `M[J]`.
    pub fn rho(&self, x: &[BigInt]) -> Vec<BigRational> {
        let mut acc = self.target.zero();
        for (xi, r) in x.iter().zip(&self.rho) {
            if xi.is_zero() {
                continue;
            }
            let k = BigRational::from_integer(xi.clone());
            let scaled: Vec<BigRational> = r.iter().map(|v| v * &k).collect();
            acc = self.target.add(&acc, &scaled);
        }
        acc
    }

    /// Smallest `L` with `ρ(M) ⊆ T[L]`.
    pub fn level(&self) -> BigInt {
        lcm_denominators(self.rho.iter()).max(BigInt::one())
    }

    /// Exponent of `M[J]`.
    pub fn torsion_exponent(&self) -> BigInt {
        self.tors.to_module().0.torsion_exponent()
    }

    /// `ρ` as a map into the layer `T[L]`; `L` must be a multiple of `level()`.
    pub fn rho_map(&self, level: &BigInt) -> Result<ModuleMap> {
        let layer = self.target.layer(level);
        let rows: Vec<Vec<BigInt>> = self
            .rho
            .iter()
            .map(|r| self.target.to_layer(r, level))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::LevelTooSmall { given: level.clone(), required: self.level() })?;
        let m = crate::exactalg::IntMatrix::from_rows(layer.ngens(), rows)?;
        ModuleMap::new(self.module.clone(), layer, m)
    }

    /// The same module pointed through `M[J]` only, re-derived from pairs
    /// (used when the module is rebuilt from a presentation).
    pub fn with_pairs(&self, module: &FgModule, pairs: &[(Vec<BigInt>, Vec<BigRational>)]) -> Result<PointedModule> {
        PointedModule::new(&self.filter, &self.target, module, pairs)
    }

    /// Pointing pairs transported along a map into another module.
    pub fn pushed_pairs(&self, f: &ModuleMap) -> Vec<(Vec<BigInt>, Vec<BigRational>)> {
        self.pointing.iter().map(|(x, t)| (f.apply(x), t.clone())).collect()
    }

    /// A submodule with the restricted pointing.
    pub fn restrict(&self, sub: &Submodule) -> Result<(PointedModule, ModuleMap)> {
        let (m, inc) = sub.to_module();
        let tors = torsion(&self.filter, &m)?;
        let pairs: Vec<(Vec<BigInt>, Vec<BigRational>)> = tors
            .generators()
            .into_iter()
            .map(|x| {
                let t = self.rho(&inc.apply(&x));
                (x, t)
            })
            .collect();
        Ok((PointedModule::new(&self.filter, &self.target, &m, &pairs)?, inc))
    }

    fn same_setting(&self, other: &PointedModule) -> Result<()> {
        if self.filter != other.filter || self.target != other.target {
            return Err(Error::IncompatiblePointing("different filters or targets".into()));
        }
        Ok(())
    }
}

/// A homomorphism of pointed modules: `t ∘ φ|_{L[J]} = s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedMap {
    source: PointedModule,
    target: PointedModule,
    map: ModuleMap,
}

impl PointedMap {
    pub fn new(source: &PointedModule, target: &PointedModule, map: &ModuleMap) -> Result<PointedMap> {
        source.same_setting(target)?;
        if map.source() != source.module() || map.target() != target.module() {
            return Err(Error::Dimension("map does not match the pointed modules".into()));
        }
        for (x, t) in &source.pointing {
            let image = target.rho(&map.apply(x));
            if &image != t {
                return Err(Error::IncompatiblePointing(format!(
                    "{x:?} is pointed at {t:?} but its image is pointed at {image:?}"
                )));
            }
        }
        Ok(PointedMap { source: source.clone(), target: target.clone(), map: map.clone() })
    }

    pub fn identity(m: &PointedModule) -> PointedMap {
        PointedMap { source: m.clone(), target: m.clone(), map: m.module.identity_map() }
    }

    pub fn source(&self) -> &PointedModule {
        &self.source
    }

    pub fn target(&self) -> &PointedModule {
        &self.target
    }

    pub fn map(&self) -> &ModuleMap {
        &self.map
    }

    pub fn then(&self, next: &PointedMap) -> Result<PointedMap> {
        Ok(PointedMap { source: self.source.clone(), target: next.target.clone(), map: self.map.then(&next.map)? })
    }

    /// `D_J(f(L), M) = f(L) + M[J]`.
    pub fn is_pure(&self) -> Result<bool> {
        let image = self.map.image();
        Ok(divide_filter(&self.source.filter, &image)? == image.sum(self.target.torsion()))
    }
}

/// A (J,T)-extension: an injective J-map of pointed modules `M ↪ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JTExtension {
    base: PointedModule,
    total: PointedModule,
    inc: ModuleMap,
}

impl JTExtension {
    pub fn new(base: &PointedModule, total: &PointedModule, inc: &ModuleMap) -> Result<JTExtension> {
        let pm = PointedMap::new(base, total, inc)?;
        if !inc.is_injective() {
            return Err(Error::NotInjective);
        }
        if !is_jmap(&base.filter, inc)? {
            return Err(Error::NotJMap);
        }
        Ok(JTExtension { base: pm.source, total: pm.target, inc: pm.map })
    }

    /// The identity extension `M = M`.
    pub fn trivial(m: &PointedModule) -> JTExtension {
        JTExtension { base: m.clone(), total: m.clone(), inc: m.module.identity_map() }
    }

    pub fn base(&self) -> &PointedModule {
        &self.base
    }

    pub fn total(&self) -> &PointedModule {
        &self.total
    }

    pub fn inc(&self) -> &ModuleMap {
        &self.inc
    }

    pub fn filter(&self) -> &IdealFilter {
        &self.base.filter
    }

    pub fn pointed_inc(&self) -> PointedMap {
        PointedMap { source: self.base.clone(), target: self.total.clone(), map: self.inc.clone() }
    }

    /// `N / i(M)` with its projection.
    pub fn quotient(&self) -> (FgModule, ModuleMap) {
        self.inc.image().quotient()
    }

    /// `N / (i(M) + N[J])`.
    pub fn torsion_free_quotient(&self) -> (FgModule, ModuleMap) {
        self.inc.image().sum(self.total.torsion()).quotient()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// `Z/2 ⊕ Z/6 ⊕ Z` pointed into `(Q/Z)²`: `(1,0,0) ↦ (1/2, 0)`, `(0,1,0) ↦ (0, 1/6)`.
    pub(crate) fn example_module() -> PointedModule {
        let m = FgModule::abelian_u64(&[2, 6], 1);
        let pairs = vec![
            (vec![b(1), b(0), b(0)], vec![q(1, 2), q(0, 1)]),
            (vec![b(0), b(1), b(0)], vec![q(0, 1), q(1, 6)]),
        ];
        PointedModule::new(&IdealFilter::AllNonzeroIntegers, &TorsionTarget::q_mod_z(2), &m, &pairs).unwrap()
    }

    #[test]
    fn example_pointing_is_valid() {
        let m = example_module();
        assert_eq!(m.torsion().to_module().0, FgModule::abelian_u64(&[2, 6], 0));
        assert_eq!(m.rho(&[b(1), b(3), b(5)]), vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let m = FgModule::abelian_u64(&[6], 0);
        let r = PointedModule::new(
            &IdealFilter::AllNonzeroIntegers,
            &TorsionTarget::q_mod_z(1),
            &m,
            &[(vec![b(1)], vec![q(1, 4)])],
        );
        assert!(matches!(r, Err(Error::NonInjectivePointing(_))));
    }

    #[test]
    fn non_injective_pointing_is_rejected() {
        let m = FgModule::abelian_u64(&[2, 2], 0);
        let r = PointedModule::new(
            &IdealFilter::AllNonzeroIntegers,
            &TorsionTarget::q_mod_z(1),
            &m,
            &[(vec![b(1), b(0)], vec![q(1, 2)]), (vec![b(0), b(1)], vec![q(1, 2)])],
        );
        assert!(matches!(r, Err(Error::NonInjectivePointing(_))));
    }

    #[test]
    fn missing_generators_are_rejected() {
        let m = FgModule::abelian_u64(&[2, 2], 0);
        let r = PointedModule::new(
            &IdealFilter::AllNonzeroIntegers,
            &TorsionTarget::q_mod_z(2),
            &m,
            &[(vec![b(1), b(0)], vec![q(1, 2), q(0, 1)])],
        );
        assert!(matches!(r, Err(Error::NonInjectivePointing(_))));
    }

    #[test]
    fn torsion_inclusion_is_pure() {
        let m = example_module();
        let (t, inc) = m.torsion().to_module();
        let tp = m.restrict(&inc.image()).unwrap().0;
        assert_eq!(tp.module(), &t);
        let f = PointedMap::new(&tp, &m, &inc).unwrap();
        assert!(f.is_pure().unwrap());
        assert!(PointedMap::identity(&m).is_pure().unwrap());
    }

    #[test]
    fn doubling_into_half_integers_is_not_pure() {
        let two = IdealFilter::p_power(2).unwrap();
        let t = TorsionTarget::prufer(2, 1).unwrap();
        let z = FgModule::abelian_u64(&[], 1);
        let l = PointedModule::unpointed(&two, &t, &z).unwrap();
        // Z ↪ (1/2)Z is multiplication by 2 in the generator 1/2
        let f = ModuleMap::new(z.clone(), z, crate::exactalg::IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert!(!PointedMap::new(&l, &l, &f).unwrap().is_pure().unwrap());
    }
}
