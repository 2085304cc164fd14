//! `0 → Hom(N/(i(M)+N[J]), N[J]) → Aut_M(N) → Aut(N[J]) ` for normal
//! extensions, computed on explicit tables.

use num_bigint::BigInt;

use super::group::{AutGroup, MAX_GROUP_ORDER};
use crate::error::{Error, Result};
use crate::exactalg::{hom_module, solve_homs, FgModule, ModuleMap, Submodule};
use crate::hulls::{is_normal, DivisibleHull};
use crate::pointed::functors::corestrict;
use crate::pointed::JTExtension;

/// The automorphisms of `module` that restrict to the identity on `fixed`.
fn automorphisms_fixing(module: &FgModule, fixed: &Submodule) -> Result<AutGroup> {
    let values: Vec<(Vec<BigInt>, Vec<BigInt>)> = fixed.generators().into_iter().map(|g| (g.clone(), g)).collect();
    let sols = solve_homs(module, module, &values)?.expect("the identity is a solution");
    if let Some(c) = sols.count() {
        if c > BigInt::from(MAX_GROUP_ORDER) * 64 {
            return Err(Error::EnumerationLimit { size: c, limit: MAX_GROUP_ORDER as u64 });
        }
    } else {
        return Err(Error::InfiniteSearch("automorphisms with an infinite quotient".into()));
    }
    let auts = sols.maps()?.into_iter().filter(ModuleMap::is_isomorphism).collect();
    AutGroup::from_elements(module, auts)
}

/// `Aut_{M+N[J]}(N)` with its identification with `Hom(N/(i(M)+N[J]), N[J])`.
#[derive(Clone, Debug)]
pub struct KernelGroup {
    pub group: AutGroup,
    /// `|Hom(N/(i(M)+N[J]), N[J])|`.
    pub hom_order: usize,
    /// `σ ↦ σ − id` is a bijective homomorphism onto the Hom group.
    pub cross_check: bool,
    pub abelian: bool,
}

pub fn aut_fixing_base_and_torsion(n: &JTExtension) -> Result<KernelGroup> {
    let total = n.total().module();
    let s = n.inc().image().sum(n.total().torsion());
    let (q, _) = s.quotient();
    if !q.is_finite() {
        return Err(Error::InfiniteSearch("N/(i(M) + N[J]) is infinite".into()));
    }
    let group = automorphisms_fixing(total, &s)?;
    let (tors, inc) = n.total().torsion().to_module();
    let homs = hom_module(&q, &tors)?;
    let hom_order = crate::exactalg::check_enumeration(&homs.count().expect("finite"))?;

    // σ − id factors as N → N/S → N[J] → N
    let id = total.identity_map();
    let mut cross_check = hom_order == group.order();
    let mut seen = std::collections::HashSet::new();
    let s_gens = s.generators();
    for sigma in group.elements() {
        let d = sigma.sub(&id);
        if s_gens.iter().any(|x| !total.is_zero_element(&d.apply(x))) {
            cross_check = false;
        }
        match corestrict(&d, &inc) {
            Ok(into_t) => {
                seen.insert(into_t.matrix().clone());
            }
            Err(_) => cross_check = false,
        }
        for g in group.generators() {
            if sigma.then(g)?.sub(&id) != d.add(&g.sub(&id)) {
                cross_check = false;
            }
        }
    }
    cross_check &= seen.len() == group.order();
    let abelian = group.is_abelian()?;
    Ok(KernelGroup { group, hom_order, cross_check, abelian })
}

/// The restrictions to `N[J]` of the automorphisms of `N` over `M`.
#[derive(Clone, Debug)]
pub struct TorsionQuotient {
    pub group: AutGroup,
    /// `Aut_{M[J]}(N[J])`, all automorphisms of the torsion fixing `i(M)[J]`.
    pub unrestricted: AutGroup,
}

fn restrict_to_torsion(sigma: &ModuleMap, inc: &ModuleMap) -> Result<ModuleMap> {
    corestrict(&inc.then(sigma)?, inc)
}

fn middle_group(n: &JTExtension) -> Result<AutGroup> {
    if !n.quotient().0.is_finite() {
        return Err(Error::InfiniteSearch("N/i(M) is infinite".into()));
    }
    automorphisms_fixing(n.total().module(), &n.inc().image())
}

fn torsion_quotient_from(n: &JTExtension, middle: &AutGroup) -> Result<TorsionQuotient> {
    let (tors, inc) = n.total().torsion().to_module();
    let mut restricted = Vec::new();
    for sigma in middle.elements() {
        restricted.push(restrict_to_torsion(sigma, &inc)?);
    }
    let group = AutGroup::from_elements(&tors, restricted)?;
    let fixed = inc.preimage(&n.inc().image());
    let unrestricted = automorphisms_fixing(&tors, &fixed)?;
    Ok(TorsionQuotient { group, unrestricted })
}

pub fn aut_torsion_quotient(n: &JTExtension) -> Result<TorsionQuotient> {
    torsion_quotient_from(n, &middle_group(n)?)
}

#[derive(Clone, Debug)]
pub struct ExactSequenceReport {
    pub kernel: KernelGroup,
    pub middle: AutGroup,
    pub quotient: TorsionQuotient,
    /// `(|kernel|, |middle|, |quotient|)`.
    pub orders: (usize, usize, usize),
    pub order_identity: bool,
    /// Restriction onto `Aut_{M[J]}(N[J])` is surjective.
    pub restriction_surjective: bool,
    /// `action[τ][h]`: index in `kernel_homs` of `τ ∘ h`.
    pub action: Vec<Vec<usize>>,
    pub kernel_homs: Vec<ModuleMap>,
    pub level: BigInt,
}

/// The exact sequence for an extension certified normal at level `L`.
pub fn exact_sequence(n: &JTExtension, gamma: &DivisibleHull, level: &BigInt) -> Result<ExactSequenceReport> {
    let verdict = is_normal(n, gamma, level)?;
    if !verdict.normal {
        return Err(Error::NotNormal { level: level.clone() });
    }
    let kernel = aut_fixing_base_and_torsion(n)?;
    let middle = middle_group(n)?;
    let quotient = torsion_quotient_from(n, &middle)?;
    let orders = (kernel.group.order(), middle.order(), quotient.group.order());

    let s = n.inc().image().sum(n.total().torsion());
    let (q, _) = s.quotient();
    let (tors, _) = n.total().torsion().to_module();
    let kernel_homs = hom_module(&q, &tors)?.maps()?;
    let mut action = Vec::new();
    for tau in quotient.group.elements() {
        let row = kernel_homs
            .iter()
            .map(|h| {
                let th = h.then(tau)?;
                kernel_homs
                    .iter()
                    .position(|k| k == &th)
                    .ok_or_else(|| Error::Precondition("the action leaves the Hom group".into()))
            })
            .collect::<Result<Vec<usize>>>()?;
        action.push(row);
    }
    Ok(ExactSequenceReport {
        orders,
        order_identity: orders.1 == orders.0 * orders.2,
        restriction_surjective: quotient.group.order() == quotient.unrestricted.order(),
        kernel,
        middle,
        quotient,
        action,
        kernel_homs,
        level: level.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntMatrix;
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

    fn base() -> PointedModule {
        let t = TorsionTarget::prufer(2, 1).unwrap();
        let m = FgModule::abelian_u64(&[2], 1);
        PointedModule::new(&two(), &t, &m, &[(vec![b(1), b(0)], vec![q(1, 2)])]).unwrap()
    }

    fn z_plus_z4(half: bool) -> JTExtension {
        let m = base();
        let n_mod = FgModule::abelian_u64(&[4], 1);
        let n = PointedModule::new(&two(), m.target(), &n_mod, &[(vec![b(1), b(0)], vec![q(1, 4)])]).unwrap();
        let z = if half { 2 } else { 1 };
        JTExtension::new(&m, &n, &map(m.module(), &n_mod, &[2, 0, 0, z])).unwrap()
    }

    #[test]
    fn trivial_extension_has_trivial_groups() {
        let m = base();
        let g = maximal_extension(&m).unwrap();
        let r = exact_sequence(&JTExtension::trivial(&m), &g, &b(2)).unwrap();
        assert_eq!(r.orders, (1, 1, 1));
    }

    #[test]
    fn orders_one_two_two() {
        let n = z_plus_z4(false);
        let g = maximal_extension(n.base()).unwrap();
        let r = exact_sequence(&n, &g, &b(4)).unwrap();
        assert_eq!(r.orders, (1, 2, 2));
        assert!(r.order_identity && r.restriction_surjective);
    }

    #[test]
    fn orders_two_four_two() {
        let n = z_plus_z4(true);
        let g = maximal_extension(n.base()).unwrap();
        let r = exact_sequence(&n, &g, &b(8)).unwrap();
        assert_eq!(r.orders, (2, 4, 2));
        assert!(r.kernel.cross_check && r.kernel.abelian);
        assert_eq!(r.kernel.hom_order, 2);
        assert_eq!(r.action.len(), 2);
    }

    #[test]
    fn kernel_of_half_z_plus_z2() {
        let m = base();
        let ext = JTExtension::new(&m, &m, &map(m.module(), m.module(), &[1, 0, 0, 2])).unwrap();
        let k = aut_fixing_base_and_torsion(&ext).unwrap();
        assert_eq!(k.group.order(), 2);
        assert!(k.cross_check);
    }

    #[test]
    fn diagonal_z2_in_klein() {
        let t = TorsionTarget::prufer(2, 2).unwrap();
        let mm = FgModule::abelian_u64(&[2], 1);
        let m = PointedModule::new(&two(), &t, &mm, &[(vec![b(1), b(0)], vec![q(1, 2), q(1, 2)])]).unwrap();
        let nm = FgModule::abelian_u64(&[2, 2], 1);
        let n = PointedModule::new(
            &two(),
            &t,
            &nm,
            &[(vec![b(1), b(0), b(0)], vec![q(1, 2), q(0, 1)]), (vec![b(0), b(1), b(0)], vec![q(0, 1), q(1, 2)])],
        )
        .unwrap();
        let ext = JTExtension::new(&m, &n, &map(&mm, &nm, &[1, 1, 0, 0, 0, 1])).unwrap();
        assert_eq!(aut_torsion_quotient(&ext).unwrap().group.order(), 2);
    }

    #[test]
    fn non_normal_is_refused() {
        let t = TorsionTarget::prufer(2, 2).unwrap();
        let z = FgModule::abelian_u64(&[], 1);
        let m = PointedModule::unpointed(&two(), &t, &z).unwrap();
        let nm = FgModule::abelian_u64(&[2], 1);
        let n = PointedModule::new(&two(), &t, &nm, &[(vec![b(1), b(0)], vec![q(1, 2), q(0, 1)])]).unwrap();
        let ext = JTExtension::new(&m, &n, &map(&z, &nm, &[0, 1])).unwrap();
        let g = maximal_extension(&m).unwrap();
        assert_eq!(exact_sequence(&ext, &g, &b(2)).unwrap_err(), Error::NotNormal { level: b(2) });
    }
}
