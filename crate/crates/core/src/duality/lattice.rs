//! Joint kernels and the inclusion-reversing bijection between submodules of
//! a finite module `M` and End-submodules of `Hom(M, T)`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::endo::EndLevel;
use crate::error::{Error, Result};
use crate::exactalg::{all_submodules, hom_module, FgModule, HomSpace, IntMatrix, ModuleMap, Submodule};
use crate::pointed::{frac, TorsionTarget};

/// Largest lattice `duality_check` enumerates.
pub const MAX_LATTICE: usize = 1 << 10;

/// A homomorphism `M → T`, stored as the images of the generators of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomElement {
    source: FgModule,
    values: Vec<Vec<BigRational>>,
}

impl HomElement {
    pub fn new(source: &FgModule, target: &TorsionTarget, values: Vec<Vec<BigRational>>) -> Result<HomElement> {
        if values.len() != source.ngens() {
            return Err(Error::Dimension("one value per generator".into()));
        }
        let values: Vec<Vec<BigRational>> = values.iter().map(|v| target.normalize(v)).collect::<Result<_>>()?;
        let h = HomElement { source: source.clone(), values };
        h.to_map(target)?;
        Ok(h)
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn values(&self) -> &[Vec<BigRational>] {
        &self.values
    }

    /// The map into the layer `T[e]`, `e = exp(M)`.
    pub fn to_map(&self, target: &TorsionTarget) -> Result<ModuleMap> {
        let e = self.source.torsion_exponent();
        if !self.source.is_finite() {
            return Err(Error::Precondition("duality works with finite modules".into()));
        }
        let layer = target.layer(&e);
        let rows = self
            .values
            .iter()
            .map(|v| target.to_layer(v, &e))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::IllDefinedMap("a value has order not dividing the module exponent".into()))?;
        ModuleMap::new(self.source.clone(), layer.clone(), IntMatrix::from_rows(layer.ngens(), rows)?)
    }

    fn from_map(f: &ModuleMap, target: &TorsionTarget) -> HomElement {
        let e = f.source().torsion_exponent();
        let src = f.source();
        let values = (0..src.ngens()).map(|k| target.from_layer(&f.apply(&src.unit_vector(k)), &e)).collect();
        HomElement { source: src.clone(), values }
    }

    /// `a ∘ h` for an endomorphism `a` of `T` acting on row vectors.
    pub fn compose(&self, a: &IntMatrix) -> HomElement {
        let values = self
            .values
            .iter()
            .map(|v| {
                (0..a.cols())
                    .map(|j| {
                        let mut acc = BigRational::from_integer(BigInt::from(0));
                        for (i, x) in v.iter().enumerate() {
                            acc += x * BigRational::from_integer(a[(i, j)].clone());
                        }
                        frac(&acc)
                    })
                    .collect()
            })
            .collect();
        HomElement { source: self.source.clone(), values }
    }
}

/// `Hom(M, T)` as a finite group, with conversions to and from coordinates.
struct HomGroup {
    target: TorsionTarget,
    space: HomSpace,
}

impl HomGroup {
    fn new(m: &FgModule, target: &TorsionTarget) -> Result<HomGroup> {
        if !m.is_finite() {
            return Err(Error::Precondition("duality works with finite modules".into()));
        }
        let layer = target.layer(&m.torsion_exponent());
        Ok(HomGroup { target: target.clone(), space: hom_module(m, &layer)? })
    }

    fn group(&self) -> &FgModule {
        self.space.group()
    }

    fn coords(&self, h: &HomElement) -> Result<Vec<BigInt>> {
        let f = h.to_map(&self.target)?;
        self.space.coordinates(&f).ok_or_else(|| Error::IllDefinedMap("not a homomorphism".into()))
    }

    fn element(&self, c: &[BigInt]) -> HomElement {
        HomElement::from_map(&self.space.map_at(c), &self.target)
    }

    /// The End-submodule generated by `gens` (coordinates).
    fn end_span(&self, gens: &[Vec<BigInt>], end: &EndLevel) -> Result<Submodule> {
        let g = self.group();
        let mut span = Submodule::from_elements(g, gens);
        loop {
            let mut more = Vec::new();
            for x in span.generators() {
                let h = self.element(&x);
                for a in end.generators() {
                    more.push(self.coords(&h.compose(a))?);
                }
            }
            more.extend(span.generators());
            let next = Submodule::from_elements(g, &more);
            if next == span {
                return Ok(span);
            }
            span = next;
        }
    }

    /// Homomorphisms vanishing on `sub`, as a subgroup of `Hom(M, T)`.
    fn annihilator(&self, sub: &Submodule) -> Result<Submodule> {
        let gens = sub.generators();
        let g = self.group();
        let mut members = Vec::new();
        for c in g.elements()? {
            let f = self.space.map_at(&c);
            if gens.iter().all(|x| f.target().is_zero_element(&f.apply(x))) {
                members.push(c);
            }
        }
        Ok(Submodule::from_elements(g, &members))
    }

    /// Joint kernel of a subgroup of `Hom(M, T)`.
    fn kernel_of(&self, v: &Submodule, m: &FgModule) -> Submodule {
        let mut k = Submodule::whole(m);
        for c in v.generators() {
            k = k.intersect(&self.space.map_at(&c).kernel());
        }
        k
    }
}

/// `ker(V) = ⋂ ker(f)` over `f ∈ V`.
pub fn joint_kernel(v: &[HomElement], target: &TorsionTarget) -> Result<Submodule> {
    let first = v.first().ok_or(Error::EmptyFamily)?;
    let m = first.source();
    let mut k = Submodule::whole(m);
    for h in v {
        if h.source() != m {
            return Err(Error::Dimension("homomorphisms must share their source".into()));
        }
        k = k.intersect(&h.to_map(target)?.kernel());
    }
    Ok(k)
}

#[derive(Clone, Debug)]
pub struct Closure {
    /// `Hom(M/ker(V), T)`, as homomorphisms on `M`.
    pub homs: Vec<HomElement>,
    /// Whether the End-span of `V` is already all of it.
    pub equal: bool,
    pub span_order: BigInt,
}

/// `Hom(M/ker(V), T)` compared with the End-module generated by `V`.
pub fn closure(v: &[HomElement], target: &TorsionTarget, end: &EndLevel) -> Result<Closure> {
    let k = joint_kernel(v, target)?;
    let m = v[0].source();
    let hg = HomGroup::new(m, target)?;
    let coords: Vec<Vec<BigInt>> = v.iter().map(|h| hg.coords(h)).collect::<Result<_>>()?;
    let span = hg.end_span(&coords, end)?;
    let ann = hg.annihilator(&k)?;
    let homs = ann.elements()?.iter().map(|c| hg.element(c)).collect();
    Ok(Closure { homs, equal: span == ann, span_order: span.order().expect("finite") })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub submodules: usize,
    pub end_submodules: usize,
    pub mutually_inverse: bool,
    pub inclusion_reversing: bool,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.submodules == self.end_submodules && self.mutually_inverse && self.inclusion_reversing
    }
}

/// All End-submodules of `Hom(M, T)`: sums of cyclic End-submodules.
fn end_submodules(hg: &HomGroup, end: &EndLevel) -> Result<Vec<Submodule>> {
    let mut cyclic: Vec<Submodule> = Vec::new();
    let mut seen: HashSet<Submodule> = HashSet::new();
    for c in hg.group().elements()? {
        let s = hg.end_span(&[c], end)?;
        if seen.insert(s.clone()) {
            cyclic.push(s);
        }
    }
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                let t = s.sum(c);
                if seen.insert(t.clone()) {
                    if seen.len() > MAX_LATTICE {
                        return Err(Error::LatticeTooLarge(seen.len()));
                    }
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Submodule> = seen.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.basis().entries().cmp(b.basis().entries())));
    Ok(out)
}

/// Checks that `M' ↦ Hom(M/M', T)` and `V ↦ ker(V)` are mutually inverse,
/// inclusion-reversing bijections, by enumerating both lattices.
pub fn duality_check(m: &FgModule, target: &TorsionTarget, end: &EndLevel) -> Result<DualityReport> {
    let subs = all_submodules(m, MAX_LATTICE)?;
    let hg = HomGroup::new(m, target)?;
    let ends = end_submodules(&hg, end)?;

    let duals: Vec<Submodule> = subs.iter().map(|s| hg.annihilator(s)).collect::<Result<_>>()?;
    let kernels: Vec<Submodule> = ends.iter().map(|v| hg.kernel_of(v, m)).collect();

    let mut mutually_inverse = true;
    for (s, d) in subs.iter().zip(&duals) {
        mutually_inverse &= &hg.kernel_of(d, m) == s && ends.contains(d);
    }
    for (v, k) in ends.iter().zip(&kernels) {
        mutually_inverse &= &hg.annihilator(k)? == v;
    }
    let mut inclusion_reversing = true;
    for (i, a) in subs.iter().enumerate() {
        for (j, b) in subs.iter().enumerate() {
            if a.is_subset(b) {
                inclusion_reversing &= duals[j].is_subset(&duals[i]);
            }
        }
    }
    for (i, a) in ends.iter().enumerate() {
        for (j, b) in ends.iter().enumerate() {
            if a.is_subset(b) {
                inclusion_reversing &= kernels[j].is_subset(&kernels[i]);
            }
        }
    }
    Ok(DualityReport { submodules: subs.len(), end_submodules: ends.len(), mutually_inverse, inclusion_reversing })
}

/// `duality_check` for an abelian group and `T = (Q/Z)^s`.
pub fn duality_check_abelian(m: &FgModule, s: usize) -> Result<DualityReport> {
    let t = TorsionTarget::q_mod_z(s);
    let end = EndLevel::full(s, &m.torsion_exponent());
    duality_check(m, &t, &end)
}
