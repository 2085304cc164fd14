//! Embeddings of extensions into a maximal extension, and normality.

use num_bigint::BigInt;
use num_integer::Integer;

use super::hull::{DivisibleHull, HullWindow};
use crate::error::{Error, Result};
use crate::exactalg::{solve_homs, ModuleMap, Submodule};
use crate::pointed::JTExtension;

/// All embeddings found at one level.
#[derive(Clone, Debug)]
pub struct Embeddings {
    pub window: HullWindow,
    pub maps: Vec<ModuleMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityVerdict {
    pub normal: bool,
    pub level: BigInt,
    pub embeddings: usize,
    pub distinct_images: usize,
}

/// Smallest level whose window contains every `f(N)` with `f ∘ i = ι`:
/// the hull's own level times the exponent of `N/i(M)`.
pub fn required_level(n: &JTExtension, gamma: &DivisibleHull) -> Result<BigInt> {
    if gamma.source() != n.base().module() {
        return Err(Error::Precondition("the hull is not built over the extension's base".into()));
    }
    let (q, _) = n.quotient();
    if !q.is_finite() {
        return Err(Error::InfiniteSearch("embeddings of an extension with infinite quotient".into()));
    }
    Ok(gamma.level_for(&(gamma.min_level() * q.torsion_exponent())))
}

/// Every injective map `f: N → Γ` with `f ∘ i = ι`, found inside the window
/// of level `L`. Pointings are not required to be respected.
pub fn embeddings_at_level(n: &JTExtension, gamma: &DivisibleHull, level: &BigInt) -> Result<Embeddings> {
    let required = required_level(n, gamma)?;
    if !level.is_multiple_of(&required) {
        return Err(Error::LevelTooSmall { given: level.clone(), required });
    }
    let window = gamma.window(level)?;
    let base = n.base().module();
    let values: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..base.ngens())
        .map(|k| {
            let e = base.unit_vector(k);
            (n.inc().apply(&e), window.iota.apply(&e))
        })
        .collect();
    let maps = match solve_homs(n.total().module(), &window.module, &values)? {
        None => vec![],
        Some(sols) => sols.maps()?.into_iter().filter(ModuleMap::is_injective).collect(),
    };
    Ok(Embeddings { window, maps })
}

/// Normality at level `L`: all embeddings share one image.
pub fn is_normal(n: &JTExtension, gamma: &DivisibleHull, level: &BigInt) -> Result<NormalityVerdict> {
    let e = embeddings_at_level(n, gamma, level)?;
    let mut images: Vec<Submodule> = Vec::new();
    for f in &e.maps {
        let im = f.image();
        if !images.contains(&im) {
            images.push(im);
        }
    }
    Ok(NormalityVerdict {
        normal: images.len() <= 1,
        level: level.clone(),
        embeddings: e.maps.len(),
        distinct_images: images.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{FgModule, IntMatrix};
    use crate::hulls::maximal_extension;
    use crate::modfilter::IdealFilter;
    use crate::pointed::{PointedModule, TorsionTarget};
    use num_rational::BigRational;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn two() -> IdealFilter {
        IdealFilter::p_power(2).unwrap()
    }

    fn map(src: &FgModule, dst: &FgModule, e: &[i64]) -> ModuleMap {
        ModuleMap::new(src.clone(), dst.clone(), IntMatrix::from_i64(src.ngens(), dst.ngens(), e)).unwrap()
    }

    /// `M = Z ⊕ Z/2` pointed into `Z[1/2]/Z`.
    fn base() -> PointedModule {
        let t = TorsionTarget::prufer(2, 1).unwrap();
        let m = FgModule::abelian_u64(&[2], 1);
        PointedModule::new(&two(), &t, &m, &[(vec![b(1), b(0)], vec![q(1, 2)])]).unwrap()
    }

    #[test]
    fn base_embeds_only_by_iota() {
        let m = base();
        let g = maximal_extension(&m).unwrap();
        let e = embeddings_at_level(&JTExtension::trivial(&m), &g, &b(4)).unwrap();
        assert_eq!(e.maps.len(), 1);
        assert_eq!(e.maps[0], e.window.iota);
    }

    #[test]
    fn z_plus_z4_over_z_plus_z2() {
        let m = base();
        let t = m.target().clone();
        let n_mod = FgModule::abelian_u64(&[4], 1);
        let n = PointedModule::new(&two(), &t, &n_mod, &[(vec![b(1), b(0)], vec![q(1, 4)])]).unwrap();
        let ext = JTExtension::new(&m, &n, &map(m.module(), &n_mod, &[2, 0, 0, 1])).unwrap();
        let g = maximal_extension(&m).unwrap();
        assert_eq!(required_level(&ext, &g).unwrap(), b(4));
        let v = is_normal(&ext, &g, &b(16)).unwrap();
        assert_eq!((v.embeddings, v.distinct_images), (2, 1));
        assert!(v.normal);
        assert!(matches!(is_normal(&ext, &g, &b(2)), Err(Error::LevelTooSmall { .. })));
    }

    #[test]
    fn new_torsion_with_room_in_t_is_not_normal() {
        let t = TorsionTarget::prufer(2, 2).unwrap();
        let z = FgModule::abelian_u64(&[], 1);
        let m = PointedModule::unpointed(&two(), &t, &z).unwrap();
        let n_mod = FgModule::abelian_u64(&[2], 1);
        let n = PointedModule::new(&two(), &t, &n_mod, &[(vec![b(1), b(0)], vec![q(1, 2), q(0, 1)])]).unwrap();
        let ext = JTExtension::new(&m, &n, &map(&z, &n_mod, &[0, 1])).unwrap();
        let g = maximal_extension(&m).unwrap();
        let v = is_normal(&ext, &g, &b(2)).unwrap();
        assert_eq!(v.distinct_images, 3);
        assert!(!v.normal);
    }

    #[test]
    fn half_z_extension_is_normal() {
        let m = base();
        let ext = JTExtension::new(&m, &m, &map(m.module(), m.module(), &[1, 0, 0, 2])).unwrap();
        let g = maximal_extension(&m).unwrap();
        assert!(is_normal(&ext, &g, &b(4)).unwrap().normal);
    }
}
