//! Homomorphisms between finitely generated modules, as the solution set of
//! a system of linear congruences in the entries of the map matrix.
//!
//! Unknowns are the entries of `Φ` (row-major). Constraints are
//! well-definedness (`dᵢ·Φᵢ ≡ 0`), ω-compatibility (`AΦ ≡ ΦB`) and optional
//! prescribed values `xΦ ≡ y`. The solution set is an affine lattice; modulo
//! matrices that represent the zero map it is a coset of a finitely
//! generated group.

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::{hnf_coefficients, solution_lattice, solve_mod, IntMatrix};
use super::module::{FgModule, ModuleMap};
use super::ring::Ring;
use crate::error::{Error, Result};

/// An affine space of homomorphisms `particular + Hom_0`, where `Hom_0` is
/// presented as a canonical module.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: FgModule,
    target: FgModule,
    particular: IntMatrix,
    lattice: IntMatrix,
    to_canon: IntMatrix,
    group: FgModule,
    gens: IntMatrix,
}

struct System {
    cols: Vec<Vec<BigInt>>,
    moduli: Vec<BigInt>,
    rhs: Vec<BigInt>,
}

impl System {
    fn push(&mut self, col: Vec<BigInt>, modulus: BigInt, rhs: BigInt) {
        if col.iter().all(Zero::is_zero) && rhs.is_zero() {
            return;
        }
        self.cols.push(col);
        self.moduli.push(modulus);
        self.rhs.push(rhs);
    }
}

/// All `φ: source → target` with `φ(x) = y` for each prescribed pair, or
/// `None` if there are none.
pub fn solve_homs(
    source: &FgModule,
    target: &FgModule,
    values: &[(Vec<BigInt>, Vec<BigInt>)],
) -> Result<Option<HomSpace>> {
    if source.ring() != target.ring() {
        return Err(Error::RingMismatch);
    }
    let (ns, nt) = (source.ngens(), target.ngens());
    let nu = ns * nt;
    let idx = |i: usize, j: usize| i * nt + j;
    let tmod = target.moduli();
    let mut sys = System { cols: vec![], moduli: vec![], rhs: vec![] };

    for (i, d) in source.torsion_factors().iter().enumerate() {
        for j in 0..nt {
            let mut col = vec![BigInt::zero(); nu];
            col[idx(i, j)] = d.clone();
            sys.push(col, tmod[j].clone(), BigInt::zero());
        }
    }
    if let (Some(a), Some(b)) = (source.action(), target.action()) {
        for i in 0..ns {
            for j in 0..nt {
                let mut col = vec![BigInt::zero(); nu];
                for k in 0..ns {
                    col[idx(k, j)] += &a[(i, k)];
                }
                for k in 0..nt {
                    col[idx(i, k)] -= &b[(k, j)];
                }
                sys.push(col, tmod[j].clone(), BigInt::zero());
            }
        }
    }
    for (x, y) in values {
        if x.len() != ns || y.len() != nt {
            return Err(Error::Dimension("prescribed value has the wrong length".into()));
        }
        for j in 0..nt {
            let mut col = vec![BigInt::zero(); nu];
            for (i, xi) in x.iter().enumerate() {
                col[idx(i, j)] = xi.clone();
            }
            sys.push(col, tmod[j].clone(), y[j].clone());
        }
    }

    let c = IntMatrix::from_rows(nu, sys.cols)?.transpose();
    let Some(part) = solve_mod(&c, &sys.moduli, &sys.rhs) else { return Ok(None) };
    let lattice = solution_lattice(&c, &sys.moduli);
    let zero_moduli: Vec<BigInt> = (0..nu).map(|u| tmod[u % nt.max(1)].clone()).collect();
    let rel = solution_lattice(&lattice, &zero_moduli);
    let p = FgModule::from_relations(Ring::Integers, lattice.rows(), &rel, None)?;
    let gens = p.from_canon.mul(&lattice);
    let particular = IntMatrix::new(ns, nt, part)?;
    Ok(Some(HomSpace {
        source: source.clone(),
        target: target.clone(),
        particular,
        lattice,
        to_canon: p.to_canon,
        group: p.module,
        gens,
    }))
}

/// `Hom(a, b)` as a group, with conversion back to maps.
pub fn hom_module(a: &FgModule, b: &FgModule) -> Result<HomSpace> {
    Ok(solve_homs(a, b, &[])?.expect("the zero map always exists"))
}

impl HomSpace {
    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    /// The group of differences of solutions (`Hom` itself when no values
    /// were prescribed), as a Z-module.
    pub fn group(&self) -> &FgModule {
        &self.group
    }

    pub fn count(&self) -> Option<BigInt> {
        self.group.order()
    }

    fn matrix_of(&self, vecz: &[BigInt]) -> IntMatrix {
        IntMatrix::new(self.source.ngens(), self.target.ngens(), vecz.to_vec()).expect("shape")
    }

    /// The map `particular + Σ hᵢ·genᵢ`.
    pub fn map_at(&self, h: &[BigInt]) -> ModuleMap {
        let d = self.gens.apply(h);
        let m = self.particular.add(&self.matrix_of(&d));
        ModuleMap::raw(self.source.clone(), self.target.clone(), m)
    }

    /// The difference map `Σ hᵢ·genᵢ` (an element of `Hom(source, target)`).
    pub fn direction_at(&self, h: &[BigInt]) -> ModuleMap {
        let d = self.gens.apply(h);
        ModuleMap::raw(self.source.clone(), self.target.clone(), self.matrix_of(&d))
    }

    pub fn particular(&self) -> ModuleMap {
        ModuleMap::raw(self.source.clone(), self.target.clone(), self.particular.clone())
    }

    /// Every solution; fails when there are infinitely many.
    pub fn maps(&self) -> Result<Vec<ModuleMap>> {
        Ok(self.group.elements()?.iter().map(|h| self.map_at(h)).collect())
    }

    /// Coordinates in `group()` of `f − particular`, if `f` is a solution.
    pub fn coordinates(&self, f: &ModuleMap) -> Option<Vec<BigInt>> {
        let diff = f.matrix().sub(&self.particular);
        let x = hnf_coefficients(&self.lattice, diff.entries())?;
        Some(self.group.reduce(&self.to_canon.apply(&x)))
    }
}
