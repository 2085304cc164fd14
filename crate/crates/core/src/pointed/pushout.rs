//! Pushouts of pointed modules along pure injections, and saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::pointed::{PointedMap, PointedModule};
use super::target::TorsionTarget;
use crate::error::{Error, Result};
use crate::exactalg::{solve_homs, FgModule, IntMatrix, ModuleMap, Submodule};
use crate::modfilter::{torsion, IdealFilter};

/// The pushout `P` of `M ← L → N` with its two structure maps.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: PointedModule,
    /// `M → P`.
    pub i: PointedMap,
    /// `N → P`.
    pub j: PointedMap,
}

/// Pushout of `f: L ↪ M` (injective, pure) and `g: L → N`.
///
/// `P = (M ⊕ N)/(S + K)` where `S = {(f(l), −g(l))}` and `K` is the set of
/// `(m, n) ∈ M[J] ⊕ N[J]` with `s(m) + t(n) = 0`; `P` is pointed by
/// `[(m, n)] ↦ s(m) + t(n)`.
pub fn pushout(f: &PointedMap, g: &PointedMap) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::Precondition("pushout maps must share their source".into()));
    }
    if !f.map().is_injective() {
        return Err(Error::NotInjective);
    }
    if !f.is_pure()? {
        return Err(Error::NotPure);
    }
    let (mp, np) = (f.target(), g.target());
    let (m, n) = (mp.module(), np.module());
    let ds = m.direct_sum(n)?;
    let d = &ds.module;

    let l = f.source().module();
    let mut rel = IntMatrix::zeros(0, d.ngens());
    for k in 0..l.ngens() {
        let e = l.unit_vector(k);
        let a = ds.inj[0].apply(&f.map().apply(&e));
        let b = ds.inj[1].apply(&g.map().apply(&e));
        rel.push_row(d.sub(&a, &b));
    }

    let (tm, inc_m) = mp.torsion().to_module();
    let (tn, inc_n) = np.torsion().to_module();
    let level = mp.level().lcm(&np.level());
    let w = tm.direct_sum(&tn)?;
    let sigma = w.proj[0]
        .then(&inc_m)?
        .then(&mp.rho_map(&level)?)?
        .add(&w.proj[1].then(&inc_n)?.then(&np.rho_map(&level)?)?);
    let into_d = w.proj[0].then(&inc_m)?.then(&ds.inj[0])?.add(&w.proj[1].then(&inc_n)?.then(&ds.inj[1])?);
    let k = into_d.image_of(&sigma.kernel());

    let sk = Submodule::from_generators(d, &rel).sum(&k);
    let (p, proj) = sk.quotient();
    let i_map = ds.inj[0].then(&proj)?;
    let j_map = ds.inj[1].then(&proj)?;
    let mut pairs = mp.pushed_pairs(&i_map);
    pairs.extend(np.pushed_pairs(&j_map));
    let pm = PointedModule::new(mp.filter(), mp.target(), &p, &pairs)?;
    Ok(Pushout { i: PointedMap::new(mp, &pm, &i_map)?, j: PointedMap::new(np, &pm, &j_map)?, module: pm })
}

impl Pushout {
    /// All maps `h: P → Q` with `h∘i = k` and `h∘j = l`, compatible with the
    /// pointings. The universal property says there is exactly one whenever
    /// `k∘f = l∘g`.
    pub fn mediating(&self, k: &PointedMap, l: &PointedMap) -> Result<Vec<PointedMap>> {
        let q = k.target();
        if l.target() != q {
            return Err(Error::Precondition("competitor maps must share their target".into()));
        }
        let mut values = Vec::new();
        for (src, via, to) in [(k.source().module(), &self.i, k), (l.source().module(), &self.j, l)] {
            for e in 0..src.ngens() {
                let x = src.unit_vector(e);
                values.push((via.map().apply(&x), to.map().apply(&x)));
            }
        }
        let Some(sols) = solve_homs(self.module.module(), q.module(), &values)? else { return Ok(vec![]) };
        let mut out = Vec::new();
        for h in sols.maps()? {
            if let Ok(pm) = PointedMap::new(&self.module, q, &h) {
                out.push(pm);
            }
        }
        Ok(out)
    }

    /// The unique mediating map; errors if the competitor does not commute.
    pub fn mediate(&self, k: &PointedMap, l: &PointedMap) -> Result<PointedMap> {
        let mut maps = self.mediating(k, l)?;
        match maps.len() {
            1 => Ok(maps.pop().expect("one element")),
            n => Err(Error::Precondition(format!("{n} mediating maps instead of exactly one"))),
        }
    }
}

/// The saturation `sat(M) = (M ⊕ T)/{(x, −s(x))}`, stored split as
/// `M/M[J] ⊕ T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturatedModule {
    filter: IdealFilter,
    target: TorsionTarget,
    free: FgModule,
}

/// A saturation together with the structural map `M → sat(M)`,
/// `x ↦ ([x], ρ(x))`.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub sat: SaturatedModule,
    pub source: PointedModule,
    /// `M → M/M[J]`.
    pub proj: ModuleMap,
}

pub fn saturate(m: &PointedModule) -> Saturation {
    let (free, proj) = m.torsion().quotient();
    Saturation {
        sat: SaturatedModule { filter: m.filter().clone(), target: m.target().clone(), free },
        source: m.clone(),
        proj,
    }
}

/// The window `F ⊕ T[L]` of a saturated module, with its two injections.
#[derive(Clone, Debug)]
pub struct SaturatedWindow {
    pub module: PointedModule,
    pub level: BigInt,
    pub free_inj: ModuleMap,
    pub torsion_inj: ModuleMap,
}

impl SaturatedModule {
    pub fn free_part(&self) -> &FgModule {
        &self.free
    }

    pub fn target(&self) -> &TorsionTarget {
        &self.target
    }

    pub fn filter(&self) -> &IdealFilter {
        &self.filter
    }

    /// Saturation of a saturated module is the module itself.
    pub fn saturate(&self) -> SaturatedModule {
        self.clone()
    }

    /// `F ⊕ T[L]`, pointed by the identity on `T[L]`.
    pub fn window(&self, level: &BigInt) -> Result<SaturatedWindow> {
        let layer = self.target.layer(level);
        let ds = self.free.direct_sum(&layer)?;
        let l = self.target.effective_level(level);
        let pairs: Vec<(Vec<BigInt>, Vec<BigRational>)> = (0..layer.ngens())
            .map(|k| {
                let e = layer.unit_vector(k);
                (ds.inj[1].apply(&e), self.target.from_layer(&e, &l))
            })
            .collect();
        let module = PointedModule::new(&self.filter, &self.target, &ds.module, &pairs)?;
        let [free_inj, torsion_inj] = ds.inj;
        Ok(SaturatedWindow { module, level: level.clone(), free_inj, torsion_inj })
    }
}

impl Saturation {
    /// `incs: M → F ⊕ T[L]` at a level where `ρ(M) ⊆ T[L]`.
    pub fn incs_at(&self, level: &BigInt) -> Result<(SaturatedWindow, PointedMap)> {
        let w = self.sat.window(level)?;
        let rho = self.source.rho_map(level)?;
        let map = self.proj.then(&w.free_inj)?.add(&rho.then(&w.torsion_inj)?);
        let pm = PointedMap::new(&self.source, &w.module, &map)?;
        Ok((w, pm))
    }
}

/// True when the pointing maps `M[J]` onto `T[L]` (the finite shadow of
/// saturation at level `L`).
pub fn is_saturated_at(m: &PointedModule, level: &BigInt) -> Result<bool> {
    let layer = m.target().layer(level);
    let tors = m.torsion().to_module().0;
    if tors.order() != layer.order() {
        return Ok(false);
    }
    Ok(m.pointing().iter().all(|(_, t)| m.target().to_layer(t, level).is_some()))
}

/// The torsion inclusion `M[J] ↪ M` as a pointed map.
pub fn torsion_inclusion(m: &PointedModule) -> Result<PointedMap> {
    let sub = torsion(m.filter(), m.module())?;
    let (t, inc) = m.restrict(&sub)?;
    PointedMap::new(&t, m, &inc)
}
