//! Pullback and pushforward of (J,T)-extensions, maps of extensions, and the
//! adjunction between the two functors.

use num_bigint::BigInt;

use super::pointed::{coords_in, JTExtension, PointedMap};
use super::pushout::{pushout, Pushout};
use crate::error::{Error, Result};
use crate::exactalg::{solve_homs, IntMatrix, ModuleMap};
use crate::modfilter::divide_filter;

/// Corestricts `f` to a submodule of its target, given by an injective map.
pub fn corestrict(f: &ModuleMap, inc: &ModuleMap) -> Result<ModuleMap> {
    let rows: Vec<Vec<BigInt>> = (0..f.source().ngens())
        .map(|k| coords_in(inc, &f.apply(&f.source().unit_vector(k))))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition("map does not land in the submodule".into()))?;
    ModuleMap::new(f.source().clone(), inc.source().clone(), IntMatrix::from_rows(inc.source().ngens(), rows)?)
}

/// A pullback `φ*N` together with the inclusion `φ*N ↪ N`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub ext: JTExtension,
    pub into_total: PointedMap,
}

/// `φ*N = D_J(i(φ(L)), N)`. For injective `φ` the base is `L` itself (via
/// `φ`), otherwise the image `φ(L)` with the restricted pointing.
pub fn pullback(phi: &PointedMap, ext: &JTExtension) -> Result<Pullback> {
    if phi.target() != ext.base() {
        return Err(Error::Precondition("pullback map must land in the extension's base".into()));
    }
    let n = ext.total();
    let u = ext.inc().image_of(&phi.map().image());
    let d = divide_filter(n.filter(), &u)?;
    let (total, inc_d) = n.restrict(&d)?;
    let (base, base_map) = if phi.map().is_injective() {
        (phi.source().clone(), phi.map().then(ext.inc())?)
    } else {
        let (img, img_inc) = phi.target().restrict(&phi.map().image())?;
        (img, img_inc.then(ext.inc())?)
    };
    let inc = corestrict(&base_map, &inc_d)?;
    Ok(Pullback { ext: JTExtension::new(&base, &total, &inc)?, into_total: PointedMap::new(&total, n, &inc_d)? })
}

/// A pushforward `φ_*N` together with the pushout data.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub ext: JTExtension,
    pub pushout: Pushout,
}

/// `φ_*N`: the pushout of `i: L ↪ N` along `φ: L ↪ M`, as an extension of `M`.
pub fn pushforward(phi: &PointedMap, ext: &JTExtension) -> Result<Pushforward> {
    if phi.source() != ext.base() {
        return Err(Error::Precondition("pushforward map must start at the extension's base".into()));
    }
    let po = pushout(phi, &ext.pointed_inc())?;
    let e = JTExtension::new(phi.target(), &po.module, po.i.map())?;
    Ok(Pushforward { ext: e, pushout: po })
}

/// A map of (J,T)-extensions with its isomorphism flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionMap {
    pub map: PointedMap,
    pub injective: bool,
    pub isomorphism: bool,
}

/// All maps `φ: a → b` of extensions of the same base (`φ ∘ i_a = i_b`,
/// compatible with the pointings).
pub fn extension_maps(a: &JTExtension, b: &JTExtension) -> Result<Vec<ExtensionMap>> {
    if a.base() != b.base() {
        return Err(Error::Precondition("extensions must share their base".into()));
    }
    if !a.quotient().0.is_finite() {
        return Err(Error::InfiniteSearch("maps out of an extension with infinite quotient".into()));
    }
    let m = a.base().module();
    let values: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..m.ngens())
        .map(|k| {
            let e = m.unit_vector(k);
            (a.inc().apply(&e), b.inc().apply(&e))
        })
        .collect();
    let Some(sols) = solve_homs(a.total().module(), b.total().module(), &values)? else { return Ok(vec![]) };
    let mut out = Vec::new();
    for f in sols.maps()? {
        if let Ok(pm) = PointedMap::new(a.total(), b.total(), &f) {
            let injective = f.is_injective();
            let isomorphism = injective && f.is_surjective();
            out.push(ExtensionMap { map: pm, injective, isomorphism });
        }
    }
    Ok(out)
}

/// Whether two extensions of the same base are isomorphic.
pub fn are_isomorphic(a: &JTExtension, b: &JTExtension) -> Result<bool> {
    Ok(extension_maps(a, b)?.iter().any(|m| m.isomorphism))
}

/// Outcome of the adjunction check on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// `|Hom(n, φ*p)|`.
    pub left: usize,
    /// `|Hom(φ_*n, p)|`.
    pub right: usize,
    pub bijection: bool,
    pub unit_triangle: bool,
    pub counit_triangle: bool,
    pub counit_is_isomorphism: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.left == self.right && self.bijection && self.unit_triangle && self.counit_triangle
    }
}

fn is_extension_map(f: &ModuleMap, a: &JTExtension, b: &JTExtension) -> bool {
    a.inc().then(f).ok().as_ref() == Some(b.inc()) && PointedMap::new(a.total(), b.total(), f).is_ok()
}

/// Checks `Hom(n, φ*p) ≅ Hom(φ_*n, p)` through the map `Ψ` of the
/// adjunction, and both triangle identities for the explicit unit and counit.
pub fn adjunction_check(phi: &PointedMap, n: &JTExtension, p: &JTExtension) -> Result<AdjunctionReport> {
    if !phi.map().is_injective() {
        return Err(Error::NotInjective);
    }
    let pf = pushforward(phi, n)?;
    let pb = pullback(phi, p)?;
    let into_p = pb.into_total.map();

    let lefts = extension_maps(n, &pb.ext)?;
    let rights = extension_maps(&pf.ext, p)?;

    // Ψ: f ↦ the mediating map of (j_P, f then inclusion)
    let mut bijection = true;
    let mut images = Vec::new();
    for f in &lefts {
        let k = f.map.then(&pb.into_total)?;
        let g = pf.pushout.mediate(&PointedMap::new(p.base(), p.total(), p.inc())?, &k)?;
        if !rights.iter().any(|r| r.map == g) {
            bijection = false;
        }
        // Ψ⁻¹: restrict along N → φ_*N and corestrict into φ*P
        let back = corestrict(&pf.pushout.j.map().then(g.map())?, into_p)?;
        if &back != f.map.map() {
            bijection = false;
        }
        images.push(g);
    }
    for (i, g) in images.iter().enumerate() {
        if images[..i].contains(g) {
            bijection = false;
        }
    }
    if lefts.len() != rights.len() {
        bijection = false;
    }

    // unit η_n: N → φ*φ_*N
    let pb2 = pullback(phi, &pf.ext)?;
    let eta = corestrict(pf.pushout.j.map(), pb2.into_total.map())?;
    let mut unit_ok = is_extension_map(&eta, n, &pb2.ext);
    // ε_{φ_*n} ∘ φ_*(η_n) = id
    let pf3 = pushforward(phi, &pb2.ext)?;
    let eps_pf = pf3
        .pushout
        .mediate(&PointedMap::new(pf.ext.base(), pf.ext.total(), pf.ext.inc())?, &pb2.into_total)?;
    let via = PointedMap::new(n.total(), pb2.ext.total(), &eta)?.then(&pf3.pushout.j)?;
    let push_eta = pf.pushout.mediate(&pf3.pushout.i, &via)?;
    unit_ok &= push_eta.then(&eps_pf)?.map() == &pf.ext.total().module().identity_map();

    // counit ε_p: φ_*φ*P → P
    let pf2 = pushforward(phi, &pb.ext)?;
    let eps = pf2.pushout.mediate(&PointedMap::new(p.base(), p.total(), p.inc())?, &pb.into_total)?;
    let mut counit_ok = is_extension_map(eps.map(), &pf2.ext, p);
    // φ*(ε_p) ∘ η_{φ*p} = id
    let pb4 = pullback(phi, &pf2.ext)?;
    let eta_pb = corestrict(pf2.pushout.j.map(), pb4.into_total.map())?;
    let pulled_eps = corestrict(&pb4.into_total.map().then(eps.map())?, into_p)?;
    counit_ok &= eta_pb.then(&pulled_eps)? == pb.ext.total().module().identity_map();
    let counit_is_isomorphism = eps.map().is_isomorphism();

    Ok(AdjunctionReport {
        left: lefts.len(),
        right: rights.len(),
        bijection,
        unit_triangle: unit_ok,
        counit_triangle: counit_ok,
        counit_is_isomorphism,
    })
}
