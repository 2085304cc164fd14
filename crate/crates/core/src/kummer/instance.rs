//! Finite stand-ins for the torsion and Kummer representations.
//!
//! At level `L`, `Γ/sat(M)` is replaced by a finite module `X` and `T` by
//! `T[L]`. A simulated Galois element is a pair `(κ, τ)` with
//! `κ ∈ Hom(X, T[L])` and `τ ∈ Aut(T[L])`, acting on `x̃ + t` by
//! `x̃ + t ↦ x̃ + κ(x) + τ(t)`; hence `(κ₁, τ₁)∘(κ₂, τ₂) = (κ₁ + τ₁κ₂, τ₁τ₂)`.
//! The image of `κ` is the subgroup of pairs with `τ = 1`, the image of `τ`
//! is the projection.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;

use super::bound::{index_in, BoundInputs};
use super::cohomology::{coboundary_witness, h1, is_cocycle};
use crate::autseq::AutGroup;
use crate::duality::{joint_kernel, EndLevel, HomElement};
use crate::error::{Error, Result};
use crate::exactalg::matrix::solution_lattice;
use crate::exactalg::{enumeration_limit, hom_module, FgModule, HomSpace, IntMatrix, ModuleMap, Submodule};
use crate::pointed::TorsionTarget;

#[derive(Clone, Debug)]
struct Pair {
    kummer: Vec<BigInt>,
    torsion: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct GaloisSimInstance {
    level: BigInt,
    target: TorsionTarget,
    x: FgModule,
    layer: FgModule,
    homs: HomSpace,
    generators: Vec<Pair>,
    group_order: usize,
    torsion_image: AutGroup,
    /// For each element of the torsion image, the Kummer part of one lift.
    lifts: Vec<Vec<BigInt>>,
    kummer_image: Submodule,
}

impl GaloisSimInstance {
    /// The group generated by the pairs `(τ, κ)`, with `τ` acting on the
    /// coordinates of `T` (row vectors, mod `L`).
    pub fn from_pairs(
        target: &TorsionTarget,
        level: &BigInt,
        x: &FgModule,
        pairs: &[(IntMatrix, HomElement)],
    ) -> Result<GaloisSimInstance> {
        let eff = target.effective_level(level);
        if !x.is_finite() || !eff.is_multiple_of(&x.torsion_exponent()) {
            return Err(Error::Precondition("X must be finite with exponent dividing the level".into()));
        }
        if x.ring() != target.ring() {
            return Err(Error::RingMismatch);
        }
        let pres = target.layer_presented(level);
        let layer = pres.module.clone();
        let homs = hom_module(x, &layer)?;
        let mut generators = Vec::new();
        for (tau, kappa) in pairs {
            if tau.rows() != target.s() || tau.cols() != target.s() {
                return Err(Error::Dimension(format!("torsion matrices must be {0}x{0}", target.s())));
            }
            let canon = layer.reduce_matrix(&pres.from_canon.mul(tau).mul(&pres.to_canon));
            let torsion = ModuleMap::new(layer.clone(), layer.clone(), canon)?;
            if !torsion.is_isomorphism() {
                return Err(Error::Precondition("torsion matrices must be invertible on T[L]".into()));
            }
            generators.push(Pair { kummer: kummer_coords(&homs, target, level, kappa)?, torsion });
        }
        Self::build(target, level, x, layer, homs, generators)
    }

    /// The split instance `im(κ) ⋊ im(τ)`; `kummer` must already be closed
    /// under composition with `torsion`.
    pub fn split(
        target: &TorsionTarget,
        level: &BigInt,
        x: &FgModule,
        torsion: &[IntMatrix],
        kummer: &[HomElement],
    ) -> Result<GaloisSimInstance> {
        let zero = HomElement::new(x, target, vec![target.zero(); x.ngens()])?;
        let id = IntMatrix::identity(target.s());
        let mut pairs: Vec<(IntMatrix, HomElement)> = torsion.iter().map(|t| (t.clone(), zero.clone())).collect();
        pairs.extend(kummer.iter().map(|k| (id.clone(), k.clone())));
        let inst = Self::from_pairs(target, level, x, &pairs)?;
        let given: Vec<Vec<BigInt>> =
            kummer.iter().map(|k| kummer_coords(&inst.homs, target, level, k)).collect::<Result<_>>()?;
        if Submodule::from_elements(inst.homs.group(), &given) != inst.kummer_image {
            return Err(Error::Precondition("the Kummer image is not closed under the torsion image".into()));
        }
        Ok(inst)
    }

    fn build(
        target: &TorsionTarget,
        level: &BigInt,
        x: &FgModule,
        layer: FgModule,
        homs: HomSpace,
        generators: Vec<Pair>,
    ) -> Result<GaloisSimInstance> {
        let group = homs.group().clone();
        let limit = enumeration_limit() as usize;
        let identity = Pair { kummer: group.zero_element(), torsion: layer.identity_map() };
        let key = |p: &Pair| (p.kummer.clone(), p.torsion.matrix().clone());
        let mut seen = HashMap::from([(key(&identity), ())]);
        let mut elements = vec![identity];
        let mut k = 0;
        while k < elements.len() {
            for g in &generators {
                let e = &elements[k];
                // g ∘ e = (κ_g + τ_g κ_e, τ_g τ_e)
                let moved = homs.map_at(&e.kummer).then(&g.torsion)?;
                let moved = homs.coordinates(&moved).expect("a homomorphism");
                let next = Pair { kummer: group.add(&g.kummer, &moved), torsion: e.torsion.then(&g.torsion)? };
                if seen.insert(key(&next), ()).is_none() {
                    if elements.len() >= limit {
                        return Err(Error::EnumerationLimit { size: BigInt::from(elements.len() + 1), limit: limit as u64 });
                    }
                    elements.push(next);
                }
            }
            k += 1;
        }
        let mut taus: Vec<ModuleMap> = Vec::new();
        let mut first_lift: HashMap<IntMatrix, Vec<BigInt>> = HashMap::new();
        let mut kernel = Vec::new();
        for e in &elements {
            if !first_lift.contains_key(e.torsion.matrix()) {
                first_lift.insert(e.torsion.matrix().clone(), e.kummer.clone());
                taus.push(e.torsion.clone());
            }
            if e.torsion == layer.identity_map() {
                kernel.push(e.kummer.clone());
            }
        }
        let torsion_image = AutGroup::from_elements(&layer, taus)?;
        let lifts = torsion_image.elements().iter().map(|t| first_lift[t.matrix()].clone()).collect();
        let kummer_image = Submodule::from_elements(&group, &kernel);
        let inst = GaloisSimInstance {
            level: level.clone(),
            target: target.clone(),
            x: x.clone(),
            layer,
            homs,
            generators,
            group_order: elements.len(),
            torsion_image,
            lifts,
            kummer_image,
        };
        inst.check_action()?;
        Ok(inst)
    }

    /// `im(κ)` is stable under composition with `im(τ)`.
    fn check_action(&self) -> Result<()> {
        for tau in self.torsion_image.generators() {
            for c in self.kummer_image.generators() {
                let moved = self.homs.map_at(&c).then(tau)?;
                if !self.kummer_image.contains(&self.homs.coordinates(&moved).expect("a homomorphism")) {
                    return Err(Error::Precondition("the Kummer image is not stable under the torsion image".into()));
                }
            }
        }
        Ok(())
    }

    pub fn level(&self) -> &BigInt {
        &self.level
    }

    pub fn target(&self) -> &TorsionTarget {
        &self.target
    }

    /// The finite quotient `X` standing for `Γ/sat(M)`.
    pub fn x(&self) -> &FgModule {
        &self.x
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn torsion_image(&self) -> &AutGroup {
        &self.torsion_image
    }

    /// `im(κ)` as a subgroup of `Hom(X, T[L])`.
    pub fn kummer_image(&self) -> &Submodule {
        &self.kummer_image
    }

    /// Generators of `im(κ)`.
    pub fn kummer_elements(&self) -> Vec<HomElement> {
        self.kummer_image.generators().iter().map(|c| self.hom_element(c)).collect()
    }

    /// `im(τ)` in the coordinates of `T`.
    pub fn torsion_matrices(&self) -> Vec<IntMatrix> {
        let pres = self.target.layer_presented(&self.level);
        let eff = self.target.effective_level(&self.level);
        self.torsion_image
            .elements()
            .iter()
            .map(|t| {
                let raw = pres.to_canon.mul(t.matrix()).mul(&pres.from_canon);
                IntMatrix::new(raw.rows(), raw.cols(), raw.entries().iter().map(|v| v.mod_floor(&eff)).collect())
                    .expect("shape")
            })
            .collect()
    }

    fn hom_element(&self, c: &[BigInt]) -> HomElement {
        let f = self.homs.map_at(c);
        let values =
            (0..self.x.ngens()).map(|k| self.target.from_layer(&f.apply(&self.x.unit_vector(k)), &self.level)).collect();
        HomElement::new(&self.x, &self.target, values).expect("values of a homomorphism")
    }

    /// `ker(im κ)`, the points of `X` fixed by every `(κ, 1)`.
    pub fn kummer_kernel(&self) -> Result<Submodule> {
        let gens = self.kummer_elements();
        if gens.is_empty() {
            return Ok(Submodule::whole(&self.x));
        }
        joint_kernel(&gens, &self.target)
    }

    /// `D_J(sat(M), sat(G(K)))/sat(M)`: the `x ∈ X` with `x̃ + t` fixed by
    /// the whole group for some `t ∈ T[L]`.
    pub fn rational_points(&self) -> Result<Submodule> {
        let (nx, nl) = (self.x.ngens(), self.layer.ngens());
        let moduli = self.layer.moduli();
        let dim = nx + nl;
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        let mut col_moduli = Vec::new();
        for g in &self.generators {
            let kappa = self.homs.map_at(&g.kummer);
            let shift = g.torsion.matrix().sub(&IntMatrix::identity(nl));
            for (j, modulus) in moduli.iter().enumerate().take(nl) {
                let mut c = kappa.matrix().column(j);
                c.extend(shift.column(j));
                cols.push(c);
                col_moduli.push(modulus.clone());
            }
        }
        if cols.is_empty() {
            return Ok(Submodule::whole(&self.x));
        }
        let c = IntMatrix::from_rows(cols.len(), (0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())?;
        let lat = solution_lattice(&c, &col_moduli);
        let proj: Vec<Vec<BigInt>> = (0..lat.rows()).map(|r| lat.row(r)[..nx].to_vec()).collect();
        Ok(Submodule::from_elements(&self.x, &proj))
    }

    /// The cocycle `τ ↦ κ_τ(x)` on `im(τ)`, in the order of its elements.
    pub fn cocycle_of(&self, x: &[BigInt]) -> Vec<Vec<BigInt>> {
        self.lifts.iter().map(|c| self.homs.map_at(c).apply(x)).collect()
    }
}

fn kummer_coords(homs: &HomSpace, target: &TorsionTarget, level: &BigInt, k: &HomElement) -> Result<Vec<BigInt>> {
    if k.source() != homs.source() {
        return Err(Error::Dimension("Kummer elements must be defined on X".into()));
    }
    let rows = k
        .values()
        .iter()
        .map(|v| target.to_layer(v, level))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::IllDefinedMap("a Kummer value lies outside T[L]".into()))?;
    let layer = homs.target();
    let f = ModuleMap::new(homs.source().clone(), layer.clone(), IntMatrix::from_rows(layer.ngens(), rows)?)?;
    homs.coordinates(&f).ok_or_else(|| Error::IllDefinedMap("not a homomorphism".into()))
}

#[derive(Clone, Debug)]
pub struct SesReport {
    /// First term, inside `X`.
    pub rational: Submodule,
    /// `ker(im κ)`.
    pub kernel: Submodule,
    pub h1: FgModule,
    /// The first map is injective: the first term lies in `ker(im κ)`.
    pub injective: bool,
    /// The kernel of `x ↦ [τ ↦ κ_τ(x)]` equals the first term.
    pub exact: bool,
    pub cocycles_valid: bool,
    /// The supplied first term has the computed invariant factors.
    pub matches_given: bool,
}

impl SesReport {
    pub fn holds(&self) -> bool {
        self.injective && self.exact && self.cocycles_valid && self.matches_given
    }
}

/// `0 → D_J(sat(M), sat(G(K)))/sat(M) → ker(im κ) → H¹(im τ, T[L])`.
pub fn ses_cohomology_check(inst: &GaloisSimInstance, sat_points_quotient: &FgModule) -> Result<SesReport> {
    let rational = inst.rational_points()?;
    let kernel = inst.kummer_kernel()?;
    let group = inst.torsion_image();
    let h = h1(group)?;
    let injective = rational.is_subset(&kernel);
    let mut cocycles_valid = true;
    for x in kernel.generators() {
        cocycles_valid &= is_cocycle(group, &inst.cocycle_of(&x))?;
    }
    let mut split = Vec::new();
    for x in kernel.elements()? {
        if coboundary_witness(group, &inst.cocycle_of(&x))?.is_some() {
            split.push(x);
        }
    }
    let exact = Submodule::from_elements(inst.x(), &split) == rational;
    let (r, _) = rational.to_module();
    let matches_given =
        r.torsion_factors() == sat_points_quotient.torsion_factors() && sat_points_quotient.rank() == 0;
    Ok(SesReport { rational, kernel, h1: h.module, injective, exact, cocycles_valid, matches_given })
}

/// Checks hypotheses (1)–(3) on the instance, then whether
/// `dnm · Hom(X, T[L]) ⊆ im(κ)`.
pub fn thm_main_containment_check(inst: &GaloisSimInstance, inputs: &BoundInputs) -> Result<bool> {
    if inputs.s != inst.target().s() {
        return Err(Error::Dimension("the torsion rank does not match the instance".into()));
    }
    let x = inst.x();
    for a in inst.rational_points()?.generators() {
        if !x.is_zero_element(&x.scale(&inputs.d, &a)) {
            return Err(Error::HypothesisFailure {
                condition: 1,
                detail: format!("d = {} does not kill the rational points modulo sat(M)", inputs.d),
            });
        }
    }
    let h = h1(inst.torsion_image())?;
    if !inputs.n.is_multiple_of(&h.module.torsion_exponent()) {
        return Err(Error::HypothesisFailure {
            condition: 2,
            detail: format!("H^1 has exponent {}, which does not divide n = {}", h.module.torsion_exponent(), inputs.n),
        });
    }
    let eff = inst.target().effective_level(inst.level());
    let ring = EndLevel::generated_by(inst.target().s(), &eff, &inst.torsion_matrices())?;
    let end = EndLevel::for_target(inst.target(), &eff)?;
    let m = index_in(&ring, &end);
    if !inputs.m.is_multiple_of(&m) {
        return Err(Error::HypothesisFailure {
            condition: 3,
            detail: format!("the ring generated by the torsion image contains {m} End(T), not {} End(T)", inputs.m),
        });
    }
    let k = inputs.dnm();
    let g = inst.homs.group();
    Ok((0..g.ngens()).all(|i| inst.kummer_image().contains(&g.scale(&k, &g.unit_vector(i)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn hom(x: &FgModule, t: &TorsionTarget, vals: &[&[(i64, i64)]]) -> HomElement {
        HomElement::new(x, t, vals.iter().map(|v| v.iter().map(|&(n, d)| q(n, d)).collect()).collect()).unwrap()
    }

    /// `im τ = {±I}` on `T[4]`, `X = Z/4`, `im κ = 2·Hom`.
    fn plus_minus_instance() -> GaloisSimInstance {
        let t = TorsionTarget::q_mod_z(2);
        let x = FgModule::abelian_u64(&[4], 0);
        let k = [hom(&x, &t, &[&[(1, 2), (0, 1)]]), hom(&x, &t, &[&[(0, 1), (1, 2)]])];
        GaloisSimInstance::split(&t, &b(4), &x, &[IntMatrix::identity(2).scale(&b(-1))], &k).unwrap()
    }

    #[test]
    fn plus_minus_identity_at_level_four() {
        let inst = plus_minus_instance();
        assert_eq!(inst.torsion_image().order(), 2);
        assert_eq!(inst.kummer_image().order(), Some(b(4)));
        assert_eq!(inst.group_order(), 8);
        let rep = ses_cohomology_check(&inst, &FgModule::abelian_u64(&[2], 0)).unwrap();
        assert_eq!(rep.kernel.order(), Some(b(2)));
        assert_eq!(rep.h1, FgModule::abelian_u64(&[2, 2], 0));
        assert!(rep.holds());
        let inputs = BoundInputs::new(b(2), b(2), b(4), 1, 2).unwrap();
        assert!(thm_main_containment_check(&inst, &inputs).unwrap());
    }

    #[test]
    fn full_kummer_image_has_trivial_kernel() {
        let t = TorsionTarget::q_mod_z(1);
        let x = FgModule::abelian_u64(&[6], 0);
        let inst = GaloisSimInstance::split(&t, &b(6), &x, &[], &[hom(&x, &t, &[&[(1, 6)]])]).unwrap();
        let rep = ses_cohomology_check(&inst, &FgModule::abelian_u64(&[], 0)).unwrap();
        assert!(rep.kernel.is_zero() && rep.rational.is_zero() && rep.holds());
        let one = BoundInputs::new(b(1), b(1), b(1), 1, 1).unwrap();
        assert!(thm_main_containment_check(&inst, &one).unwrap());
    }

    #[test]
    fn trivial_torsion_image_gives_kernel_exactly() {
        let t = TorsionTarget::q_mod_z(1);
        let x = FgModule::abelian_u64(&[2, 4], 0);
        let k = [hom(&x, &t, &[&[(0, 1)], &[(1, 2)]])];
        let inst = GaloisSimInstance::split(&t, &b(4), &x, &[], &k).unwrap();
        let rep = ses_cohomology_check(&inst, &FgModule::abelian_u64(&[2, 2], 0)).unwrap();
        assert!(rep.h1.is_zero_module());
        assert_eq!(rep.rational, rep.kernel);
        assert!(rep.holds());
    }

    #[test]
    fn twisted_instance_has_a_nonzero_connecting_map() {
        // σ = (κ, −1) with κ(1) = 1/4 on X = Z/4: σ² = 1, im κ = 0, and
        // only the even points of X are rational
        let t = TorsionTarget::q_mod_z(1);
        let x = FgModule::abelian_u64(&[4], 0);
        let pairs = [(IntMatrix::from_i64(1, 1, &[-1]), hom(&x, &t, &[&[(1, 4)]]))];
        let inst = GaloisSimInstance::from_pairs(&t, &b(4), &x, &pairs).unwrap();
        assert_eq!(inst.group_order(), 2);
        assert!(inst.kummer_image().is_zero());
        let rep = ses_cohomology_check(&inst, &FgModule::abelian_u64(&[2], 0)).unwrap();
        assert_eq!(rep.kernel.order(), Some(b(4)));
        assert_eq!(rep.rational.order(), Some(b(2)));
        assert!(rep.holds());
        assert!(!ses_cohomology_check(&inst, &FgModule::abelian_u64(&[4], 0)).unwrap().holds());
    }

    #[test]
    fn violated_condition_three_is_reported() {
        let t = TorsionTarget::q_mod_z(2);
        let x = FgModule::abelian_u64(&[4], 0);
        let k = [hom(&x, &t, &[&[(1, 4), (0, 1)]]), hom(&x, &t, &[&[(0, 1), (1, 4)]])];
        let inst = GaloisSimInstance::split(&t, &b(4), &x, &[IntMatrix::identity(2)], &k).unwrap();
        let inputs = BoundInputs::new(b(1), b(1), b(1), 1, 2).unwrap();
        assert!(matches!(
            thm_main_containment_check(&inst, &inputs),
            Err(Error::HypothesisFailure { condition: 3, .. })
        ));
    }

    #[test]
    fn unclosed_kummer_image_is_rejected() {
        let t = TorsionTarget::q_mod_z(2);
        let x = FgModule::abelian_u64(&[2], 0);
        let swap = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        let k = [hom(&x, &t, &[&[(1, 2), (0, 1)]])];
        assert!(GaloisSimInstance::split(&t, &b(2), &x, &[swap], &k).is_err());
    }
}
