//! Finitely generated modules in canonical (Smith) form, maps between them,
//! and submodules as lattices containing the relation lattice.
//!
//! A module over `Z` or a quadratic order is stored as the Z-module
//! `Z/d₁ ⊕ … ⊕ Z/d_k ⊕ Z^r` with `d₁ | d₂ | …`, `dᵢ > 1`, plus (for a
//! quadratic order) the matrix of the generator ω in those coordinates.
//! Elements are integer row vectors; torsion coordinates are kept reduced.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{hnf, hnf_coefficients, lattice_congruences, snf, solution_lattice, IntMatrix};
use super::ring::Ring;
use super::check_enumeration;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgModule {
    ring: Ring,
    torsion: Vec<BigInt>,
    rank: usize,
    action: Option<IntMatrix>,
}

impl fmt::Debug for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".into() } else { format!("Z^{}", self.rank) });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))?;
        if let Some(a) = &self.action {
            write!(f, " (w acts by {a:?})")?;
        }
        Ok(())
    }
}

/// A module built from a presentation, together with the coordinate changes
/// between the presentation's generators and the canonical generators.
#[derive(Clone, Debug)]
pub struct Presented {
    pub module: FgModule,
    /// `g × n`: presentation generator `i` ↦ canonical coordinates.
    pub to_canon: IntMatrix,
    /// `n × g`: canonical generator `j` ↦ a preimage in presentation coordinates.
    pub from_canon: IntMatrix,
}

/// A direct sum with its two injections and two projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FgModule,
    pub inj: [ModuleMap; 2],
    pub proj: [ModuleMap; 2],
}

impl FgModule {
    pub fn zero(ring: Ring) -> FgModule {
        let action = (!ring.is_integers()).then(|| IntMatrix::zeros(0, 0));
        FgModule { ring, torsion: vec![], rank: 0, action }
    }

    /// `Z/d₁ ⊕ … ⊕ Z^rank` over the integers; `factors` need not be a chain.
    pub fn abelian(factors: &[BigInt], rank: usize) -> Result<FgModule> {
        let g = factors.len() + rank;
        let mut rel = IntMatrix::zeros(factors.len(), g);
        for (i, d) in factors.iter().enumerate() {
            rel[(i, i)] = d.clone();
        }
        Ok(FgModule::from_relations(Ring::Integers, g, &rel, None)?.module)
    }

    pub fn abelian_u64(factors: &[u64], rank: usize) -> FgModule {
        let f: Vec<BigInt> = factors.iter().map(|&d| BigInt::from(d)).collect();
        FgModule::abelian(&f, rank).expect("diagonal presentation is valid")
    }

    /// The free module `R^rank` (Z-rank `rank · degree(R)`).
    pub fn free(ring: Ring, rank: usize) -> FgModule {
        let zrank = rank * ring.degree();
        let action = ring.omega_matrix().map(|w| {
            let mut a = IntMatrix::zeros(zrank, zrank);
            for blk in 0..rank {
                for i in 0..2 {
                    for j in 0..2 {
                        a[(2 * blk + i, 2 * blk + j)] = w[(i, j)].clone();
                    }
                }
            }
            a
        });
        FgModule { ring, torsion: vec![], rank: zrank, action }
    }

    /// Canonicalizes the cokernel of `relations` (rows are relations among
    /// `g` generators). `action` is the ω-matrix on the generators and is
    /// required exactly when `ring` is a quadratic order.
    pub fn from_relations(
        ring: Ring,
        g: usize,
        relations: &IntMatrix,
        action: Option<&IntMatrix>,
    ) -> Result<Presented> {
        if relations.cols() != g {
            return Err(Error::Dimension(format!(
                "relations have {} columns for {g} generators",
                relations.cols()
            )));
        }
        match (&ring, action) {
            (Ring::Integers, Some(_)) => {
                return Err(Error::BadAction("an action matrix was given for a Z-module".into()))
            }
            (Ring::QuadraticOrder { .. }, None) => {
                return Err(Error::BadAction("a quadratic-order module needs an action matrix".into()))
            }
            (_, Some(a)) if a.rows() != g || a.cols() != g => {
                return Err(Error::Dimension(format!("action must be {g}x{g}")))
            }
            _ => {}
        }
        let sm = snf(relations);
        let diag = sm.diagonal();
        let mut tors_idx = Vec::new();
        let mut free_idx = Vec::new();
        for i in 0..g {
            match diag.get(i) {
                Some(d) if d.is_one() => {}
                Some(d) if !d.is_zero() => tors_idx.push(i),
                _ => free_idx.push(i),
            }
        }
        let torsion: Vec<BigInt> = tors_idx.iter().map(|&i| diag[i].clone()).collect();
        let keep: Vec<usize> = tors_idx.iter().chain(&free_idx).copied().collect();
        let to_canon = sm.v.select_cols(&keep);
        let from_canon = sm.v_inv.select_rows(&keep);
        let mut module = FgModule { ring, torsion, rank: free_idx.len(), action: None };
        if let Some(a) = action {
            // A must carry relations to relations
            let moved = relations.mul(a).mul(&to_canon);
            for r in 0..moved.rows() {
                if !module.is_zero_element(moved.row(r)) {
                    return Err(Error::BadAction(format!(
                        "relation {r} is not mapped into the relation lattice"
                    )));
                }
            }
            let canon = from_canon.mul(a).mul(&to_canon);
            module.action = Some(module.reduce_matrix(&canon));
            module.validate_action()?;
        }
        Ok(Presented { module, to_canon, from_canon })
    }

    fn validate_action(&self) -> Result<()> {
        let a = self.action.as_ref().expect("quadratic module");
        for i in 0..self.torsion.len() {
            let row: Vec<BigInt> = a.row(i).iter().map(|x| x * &self.torsion[i]).collect();
            if !self.is_zero_element(&row) {
                return Err(Error::BadAction(format!("generator {i} breaks its relation under w")));
            }
        }
        let q = self.ring.minimal_polynomial_at(a).expect("quadratic ring");
        for r in 0..q.rows() {
            if !self.is_zero_element(q.row(r)) {
                return Err(Error::BadAction("w^2 - t w + n does not vanish".into()));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn torsion_factors(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self) -> Option<&IntMatrix> {
        self.action.as_ref()
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.rank
    }

    pub fn torsion_len(&self) -> usize {
        self.torsion.len()
    }

    /// Per-coordinate moduli; `0` marks a free coordinate.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut m = self.torsion.clone();
        m.extend(std::iter::repeat_n(BigInt::zero(), self.rank));
        m
    }

    /// The relation lattice as a basis matrix.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.ngens();
        let mut m = IntMatrix::zeros(self.torsion.len(), n);
        for (i, d) in self.torsion.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn is_zero_module(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Exponent of the torsion submodule (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ngens(), "element length must match generator count");
        v.iter()
            .enumerate()
            .map(|(i, x)| match self.torsion.get(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect()
    }

    pub fn reduce_matrix(&self, m: &IntMatrix) -> IntMatrix {
        let mut out = m.clone();
        for r in 0..m.rows() {
            let red = self.reduce(m.row(r));
            out.row_mut(r).clone_from_slice(&red);
        }
        out
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.ngens()]
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, k: &BigInt, a: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }

    /// ω·v for quadratic modules; `None` over the integers.
    pub fn act(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.action.as_ref().map(|a| self.reduce(&a.apply(v)))
    }

    /// Additive order of an element; `None` when it has infinite order.
    pub fn element_order(&self, v: &[BigInt]) -> Option<BigInt> {
        let v = self.reduce(v);
        if v[self.torsion.len()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut ord = BigInt::one();
        for (x, d) in v.iter().zip(&self.torsion) {
            ord = ord.lcm(&(d / x.gcd(d)));
        }
        Some(ord)
    }

    /// All elements of a finite module, last coordinate varying fastest.
    pub fn elements(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return Err(Error::InfiniteSearch("a module of positive rank".into()));
        }
        let total = check_enumeration(&self.order().expect("finite"))?;
        let mut out = Vec::with_capacity(total);
        let mut cur = self.zero_element();
        let k = self.torsion.len();
        loop {
            out.push(cur.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.torsion[i] {
                    break;
                }
                cur[i] = BigInt::zero();
            }
        }
    }

    /// Index of a reduced element of a finite module in `elements()` order.
    pub fn element_index(&self, v: &[BigInt]) -> usize {
        let v = self.reduce(v);
        let mut idx = BigInt::zero();
        for (x, d) in v.iter().zip(&self.torsion) {
            idx = idx * d + x;
        }
        idx.to_usize().expect("index fits in usize")
    }

    pub fn unit_vector(&self, i: usize) -> Vec<BigInt> {
        let mut v = self.zero_element();
        v[i] = BigInt::one();
        v
    }

    pub fn direct_sum(&self, other: &FgModule) -> Result<DirectSum> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let (n1, n2) = (self.ngens(), other.ngens());
        let g = n1 + n2;
        let mut rel = IntMatrix::zeros(0, g);
        for (i, d) in self.torsion.iter().enumerate() {
            let mut row = vec![BigInt::zero(); g];
            row[i] = d.clone();
            rel.push_row(row);
        }
        for (i, d) in other.torsion.iter().enumerate() {
            let mut row = vec![BigInt::zero(); g];
            row[n1 + i] = d.clone();
            rel.push_row(row);
        }
        let action = match (&self.action, &other.action) {
            (Some(a), Some(b)) => {
                let mut m = IntMatrix::zeros(g, g);
                for i in 0..n1 {
                    for j in 0..n1 {
                        m[(i, j)] = a[(i, j)].clone();
                    }
                }
                for i in 0..n2 {
                    for j in 0..n2 {
                        m[(n1 + i, n1 + j)] = b[(i, j)].clone();
                    }
                }
                Some(m)
            }
            _ => None,
        };
        let p = FgModule::from_relations(self.ring.clone(), g, &rel, action.as_ref())?;
        let idx1: Vec<usize> = (0..n1).collect();
        let idx2: Vec<usize> = (n1..g).collect();
        let inj1 = ModuleMap::raw(self.clone(), p.module.clone(), p.to_canon.select_rows(&idx1));
        let inj2 = ModuleMap::raw(other.clone(), p.module.clone(), p.to_canon.select_rows(&idx2));
        let proj1 = ModuleMap::raw(p.module.clone(), self.clone(), p.from_canon.select_cols(&idx1));
        let proj2 = ModuleMap::raw(p.module.clone(), other.clone(), p.from_canon.select_cols(&idx2));
        Ok(DirectSum { module: p.module, inj: [inj1, inj2], proj: [proj1, proj2] })
    }

    /// Multiplication by the integer `k` as an endomorphism.
    pub fn scalar_map(&self, k: &BigInt) -> ModuleMap {
        ModuleMap::raw(self.clone(), self.clone(), IntMatrix::identity(self.ngens()).scale(k))
    }

    /// Multiplication by the ring element `u + vω`.
    pub fn ring_element_map(&self, u: &BigInt, v: &BigInt) -> Result<ModuleMap> {
        let n = self.ngens();
        let mut m = IntMatrix::identity(n).scale(u);
        if !v.is_zero() {
            let a = self.action.as_ref().ok_or(Error::RingMismatch)?;
            m = m.add(&a.scale(v));
        }
        Ok(ModuleMap::raw(self.clone(), self.clone(), m))
    }

    pub fn identity_map(&self) -> ModuleMap {
        ModuleMap::raw(self.clone(), self.clone(), IntMatrix::identity(self.ngens()))
    }

    pub fn zero_map_to(&self, target: &FgModule) -> ModuleMap {
        ModuleMap::raw(self.clone(), target.clone(), IntMatrix::zeros(self.ngens(), target.ngens()))
    }
}

/// A homomorphism given by the images of the source's canonical generators
/// (rows of `matrix`, in the target's canonical coordinates).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    source: FgModule,
    target: FgModule,
    matrix: IntMatrix,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} by {:?}", self.source, self.target, self.matrix)
    }
}

impl ModuleMap {
    /// Checks well-definedness and compatibility with the ω-actions.
    pub fn new(source: FgModule, target: FgModule, matrix: IntMatrix) -> Result<ModuleMap> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch);
        }
        if matrix.rows() != source.ngens() || matrix.cols() != target.ngens() {
            return Err(Error::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.ngens(),
                target.ngens()
            )));
        }
        for (i, d) in source.torsion.iter().enumerate() {
            let row: Vec<BigInt> = matrix.row(i).iter().map(|x| x * d).collect();
            if !target.is_zero_element(&row) {
                return Err(Error::IllDefinedMap(format!(
                    "generator {i} has order {d} but its image does not"
                )));
            }
        }
        if let (Some(a), Some(b)) = (&source.action, &target.action) {
            let lhs = a.mul(&matrix);
            let rhs = matrix.mul(b);
            let diff = lhs.sub(&rhs);
            for r in 0..diff.rows() {
                if !target.is_zero_element(diff.row(r)) {
                    return Err(Error::IllDefinedMap("map does not commute with w".into()));
                }
            }
        }
        Ok(ModuleMap::raw(source, target, matrix))
    }

    /// Builds a map already known to be well defined.
    pub(crate) fn raw(source: FgModule, target: FgModule, matrix: IntMatrix) -> ModuleMap {
        let matrix = target.reduce_matrix(&matrix);
        ModuleMap { source, target, matrix }
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.apply(v))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap) -> Result<ModuleMap> {
        if self.target != next.source {
            return Err(Error::Dimension("composed maps do not meet".into()));
        }
        Ok(ModuleMap::raw(self.source.clone(), next.target.clone(), self.matrix.mul(&next.matrix)))
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::raw(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::raw(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix))
    }

    pub fn image(&self) -> Submodule {
        Submodule::from_generators(&self.target, &self.matrix)
    }

    /// The image of a submodule of the source.
    pub fn image_of(&self, sub: &Submodule) -> Submodule {
        Submodule::from_generators(&self.target, &sub.basis.mul(&self.matrix))
    }

    pub fn kernel(&self) -> Submodule {
        let basis = solution_lattice(&self.matrix, &self.target.moduli());
        Submodule::from_lattice(&self.source, basis)
    }

    /// `{x : f(x) ∈ sub}` for a submodule of the target.
    pub fn preimage(&self, sub: &Submodule) -> Submodule {
        let (w, moduli) = lattice_congruences(&sub.basis);
        let basis = solution_lattice(&self.matrix.mul(&w), &moduli);
        Submodule::from_lattice(&self.source, basis)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// The inverse of a bijective map.
    pub fn inverse(&self) -> Result<ModuleMap> {
        if !self.is_isomorphism() {
            return Err(Error::NotInjective);
        }
        let stacked = self.matrix.vstack(&self.target.relation_matrix());
        let n = self.source.ngens();
        let mut rows = Vec::new();
        for j in 0..self.target.ngens() {
            let x = super::matrix::solve_left(&stacked, &self.target.unit_vector(j))
                .expect("surjective map has preimages");
            rows.push(x[..n].to_vec());
        }
        let m = IntMatrix::from_rows(n, rows)?;
        Ok(ModuleMap::raw(self.target.clone(), self.source.clone(), m))
    }
}

/// A submodule, stored as the Hermite basis of its preimage lattice in the
/// ambient generator coordinates (which contains the relation lattice).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    ambient: FgModule,
    basis: IntMatrix,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}> in {:?}", self.basis, self.ambient)
    }
}

impl Submodule {
    /// Submodule generated by the rows of `gens` (closed under ω when present).
    pub fn from_generators(ambient: &FgModule, gens: &IntMatrix) -> Submodule {
        let mut lat = gens.clone();
        if let Some(a) = &ambient.action {
            lat = lat.vstack(&gens.mul(a));
        }
        Submodule::from_lattice(ambient, lat)
    }

    fn from_lattice(ambient: &FgModule, lat: IntMatrix) -> Submodule {
        let full = lat.vstack(&ambient.relation_matrix());
        Submodule { ambient: ambient.clone(), basis: hnf(&full).without_zero_rows() }
    }

    pub fn from_elements(ambient: &FgModule, elems: &[Vec<BigInt>]) -> Submodule {
        let gens = IntMatrix::from_rows(ambient.ngens(), elems.to_vec()).expect("element lengths");
        Submodule::from_generators(ambient, &gens)
    }

    pub fn whole(ambient: &FgModule) -> Submodule {
        Submodule::from_lattice(ambient, IntMatrix::identity(ambient.ngens()))
    }

    pub fn zero(ambient: &FgModule) -> Submodule {
        Submodule::from_lattice(ambient, IntMatrix::zeros(0, ambient.ngens()))
    }

    pub fn ambient(&self) -> &FgModule {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        hnf_coefficients(&self.basis, v).is_some()
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        (0..self.basis.rows()).all(|r| other.contains(self.basis.row(r)))
    }

    pub fn is_zero(&self) -> bool {
        self.basis == hnf(&self.ambient.relation_matrix()).without_zero_rows()
    }

    pub fn is_whole(&self) -> bool {
        self.basis == IntMatrix::identity(self.ambient.ngens())
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule::from_lattice(&self.ambient, self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        let (w, moduli) = lattice_congruences(&other.basis);
        let coeffs = solution_lattice(&self.basis.mul(&w), &moduli);
        Submodule::from_lattice(&self.ambient, coeffs.mul(&self.basis))
    }

    /// Generators of the submodule as ambient elements (relation rows omitted).
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        for r in 0..self.basis.rows() {
            let v = self.ambient.reduce(self.basis.row(r));
            if v.iter().any(|x| !x.is_zero()) && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Index in the ambient module, `None` when infinite.
    pub fn index(&self) -> Option<BigInt> {
        let n = self.ambient.ngens();
        if self.basis.rows() < n {
            return None;
        }
        Some(self.basis.select_rows(&(0..n).collect::<Vec<_>>()).determinant().abs())
    }

    /// The submodule as a module of its own, with its inclusion map.
    pub fn to_module(&self) -> (FgModule, ModuleMap) {
        let k = self.basis.rows();
        let relations = solution_lattice(&self.basis, &self.ambient.moduli());
        let action = self.ambient.action.as_ref().map(|a| {
            let moved = self.basis.mul(a);
            let rows: Vec<Vec<BigInt>> = (0..k)
                .map(|r| hnf_coefficients(&self.basis, moved.row(r)).expect("lattice is w-stable"))
                .collect();
            IntMatrix::from_rows(k, rows).expect("square")
        });
        let p = FgModule::from_relations(self.ambient.ring.clone(), k, &relations, action.as_ref())
            .expect("submodule presentation is consistent");
        let inc = ModuleMap::raw(p.module.clone(), self.ambient.clone(), p.from_canon.mul(&self.basis));
        (p.module, inc)
    }

    /// The quotient of the ambient module by this submodule, with projection.
    pub fn quotient(&self) -> (FgModule, ModuleMap) {
        let n = self.ambient.ngens();
        let p = FgModule::from_relations(self.ambient.ring.clone(), n, &self.basis, self.ambient.action.as_ref())
            .expect("quotient presentation is consistent");
        let proj = ModuleMap::raw(self.ambient.clone(), p.module.clone(), p.to_canon);
        (p.module, proj)
    }

    /// All elements of a finite submodule.
    pub fn elements(&self) -> Result<Vec<Vec<BigInt>>> {
        let (m, inc) = self.to_module();
        Ok(m.elements()?.iter().map(|e| inc.apply(e)).collect())
    }

    /// Order of a finite submodule.
    pub fn order(&self) -> Option<BigInt> {
        self.to_module().0.order()
    }
}

/// Canonical Z-invariants of a module: rank and invariant factors.
pub fn invariant_factors(m: &FgModule) -> (usize, Vec<BigInt>) {
    (m.rank(), m.torsion_factors().to_vec())
}

/// `v` lies in the row span of `basis` over the integers after reduction
/// modulo the ambient relations.
pub fn in_span(ambient: &FgModule, basis: &IntMatrix, v: &[BigInt]) -> bool {
    Submodule::from_generators(ambient, basis).contains(v)
}
