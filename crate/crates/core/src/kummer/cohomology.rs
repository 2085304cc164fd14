//! `H¹(G, A)` for a finite group of automorphisms of a finite module, from
//! the explicit cocycle conditions.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::autseq::AutGroup;
use crate::error::{Error, Result};
use crate::exactalg::matrix::{hnf_coefficients, solution_lattice, solve_mod};
use crate::exactalg::{FgModule, IntMatrix, Ring};

/// Largest `|G|·|A|` accepted by [`h1`].
pub const MAX_COHOMOLOGY_SIZE: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct H1 {
    /// `Z¹/B¹`, with its invariant factors.
    pub module: FgModule,
    pub group_order: usize,
    /// `|Z¹|` and `|B¹|`.
    pub cocycles: BigInt,
    pub coboundaries: BigInt,
}

impl H1 {
    /// `|G| · H¹ = 0`.
    pub fn annihilated_by_group_order(&self) -> bool {
        let e = self.module.torsion_exponent();
        (BigInt::from(self.group_order) % e).is_zero()
    }
}

fn check_size(g: &AutGroup) -> Result<()> {
    let a = g.module();
    let order = a.order().ok_or_else(|| Error::Precondition("H¹ needs a finite module".into()))?;
    let size = order * g.order();
    if size > BigInt::from(MAX_COHOMOLOGY_SIZE) {
        return Err(Error::EnumerationLimit { size, limit: MAX_COHOMOLOGY_SIZE });
    }
    Ok(())
}

/// Index of the lattice spanned by `basis` inside `Z^n` (a full-rank Hermite basis).
fn lattice_index(basis: &IntMatrix) -> BigInt {
    (0..basis.rows()).map(|i| basis.row(i).iter().find(|x| !x.is_zero()).expect("nonzero row").clone()).product()
}

/// `H¹(G, A)` where `G` acts on `A = g.module()` by `σ·a = σ(a)`.
///
/// A cocycle is fixed by its values on the generators of `G`; walking the
/// Cayley graph from the identity expresses every other value linearly in
/// those, and each closing edge contributes one linear constraint.
pub fn h1(g: &AutGroup) -> Result<H1> {
    check_size(g)?;
    let a = g.module();
    let n = a.ngens();
    let moduli = a.moduli();
    let gens = g.generators();
    let k = gens.len();
    let dim = k * n;

    let id = g.position(&a.identity_map()).expect("groups contain the identity");
    let mut expr: Vec<Option<IntMatrix>> = vec![None; g.order()];
    expr[id] = Some(IntMatrix::zeros(dim, n));
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    let mut col_moduli: Vec<BigInt> = Vec::new();
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let ex = expr[x].clone().expect("visited");
        for (i, s) in gens.iter().enumerate() {
            // f(s∘x) = f(s) + s·f(x)
            let mut cand = ex.mul(s.matrix());
            for j in 0..n {
                cand[(i * n + j, j)] += 1;
            }
            let y = g.position(&g.elements()[x].then(s)?).expect("closed group");
            match &expr[y] {
                None => {
                    expr[y] = Some(cand);
                    queue.push_back(y);
                }
                Some(ey) => {
                    let d = ey.sub(&cand);
                    for (j, modulus) in moduli.iter().enumerate().take(n) {
                        let c = d.column(j);
                        if c.iter().any(|v| !(v % modulus).is_zero()) {
                            cols.push(c);
                            col_moduli.push(modulus.clone());
                        }
                    }
                }
            }
        }
    }

    let z = if cols.is_empty() {
        IntMatrix::identity(dim)
    } else {
        let c = IntMatrix::from_rows(cols.len(), (0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())?;
        solution_lattice(&c, &col_moduli)
    };

    // coboundaries a ↦ (s·a − a)_s, together with the relations of A^k
    let mut rel_vectors: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..n {
        let mut v = vec![BigInt::zero(); dim];
        for (i, s) in gens.iter().enumerate() {
            for (t, x) in s.matrix().row(j).iter().enumerate() {
                v[i * n + t] = x.clone();
            }
            v[i * n + j] -= 1;
        }
        rel_vectors.push(v);
    }
    for i in 0..k {
        for j in 0..n {
            let mut v = vec![BigInt::zero(); dim];
            v[i * n + j] = moduli[j].clone();
            rel_vectors.push(v);
        }
    }
    let rows = rel_vectors
        .iter()
        .map(|v| hnf_coefficients(&z, v).ok_or_else(|| Error::Precondition("a coboundary fails the cocycle law".into())))
        .collect::<Result<Vec<_>>>()?;
    let rel = IntMatrix::from_rows(z.rows(), rows)?;
    let module = FgModule::from_relations(Ring::Integers, z.rows(), &rel, None)?.module;

    let ambient: BigInt = num_traits::pow(a.order().expect("finite"), k);
    let z_index = if dim == 0 { BigInt::from(1) } else { lattice_index(&z) };
    let cocycles = ambient / z_index;
    let h_order = module.order().expect("a quotient of a finite group");
    let coboundaries = &cocycles / &h_order;
    Ok(H1 { module, group_order: g.order(), cocycles, coboundaries })
}

/// Whether `values[i]` (the value at `g.elements()[i]`) is a 1-cocycle.
pub fn is_cocycle(g: &AutGroup, values: &[Vec<BigInt>]) -> Result<bool> {
    let a = g.module();
    if values.len() != g.order() {
        return Err(Error::Dimension("one value per group element".into()));
    }
    for x in 0..g.order() {
        for s in g.generators() {
            let y = g.position(&g.elements()[x].then(s)?).expect("closed group");
            let s_pos = g.position(s).expect("member");
            let rhs = a.add(&values[s_pos], &s.apply(&values[x]));
            if a.reduce(&values[y]) != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Some `u ∈ A` with `values[σ] = σ(u) − u` for every `σ`, if one exists.
pub fn coboundary_witness(g: &AutGroup, values: &[Vec<BigInt>]) -> Result<Option<Vec<BigInt>>> {
    let a = g.module();
    if values.len() != g.order() {
        return Err(Error::Dimension("one value per group element".into()));
    }
    let n = a.ngens();
    let moduli = a.moduli();
    let mut cols = Vec::new();
    let mut col_moduli = Vec::new();
    let mut rhs = Vec::new();
    for (sigma, v) in g.elements().iter().zip(values) {
        let d = sigma.matrix().sub(&IntMatrix::identity(n));
        for j in 0..n {
            cols.push(d.column(j));
            col_moduli.push(moduli[j].clone());
            rhs.push(v[j].clone());
        }
    }
    if n == 0 {
        return Ok(Some(vec![]));
    }
    let c = IntMatrix::from_rows(cols.len(), (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())?;
    Ok(solve_mod(&c, &col_moduli, &rhs).map(|u| a.reduce(&u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ModuleMap;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Counts cocycles and coboundaries by listing every function `G → A`.
    fn brute_force(g: &AutGroup) -> (usize, usize) {
        let a = g.module();
        let elems = a.elements().unwrap();
        let n = g.order();
        let mut cocycles = 0;
        let mut idx = vec![0usize; n];
        loop {
            let values: Vec<Vec<BigInt>> = idx.iter().map(|&i| elems[i].clone()).collect();
            let ok = g.elements().iter().enumerate().all(|(x, gx)| {
                g.elements().iter().enumerate().all(|(y, gy)| {
                    let xy = g.position(&gy.then(gx).unwrap()).unwrap();
                    a.reduce(&values[xy]) == a.add(&values[x], &gx.apply(&values[y]))
                })
            });
            cocycles += ok as usize;
            let mut p = 0;
            while p < n && idx[p] + 1 == elems.len() {
                idx[p] = 0;
                p += 1;
            }
            if p == n {
                break;
            }
            idx[p] += 1;
        }
        let mut bounds = std::collections::HashSet::new();
        for u in &elems {
            let v: Vec<Vec<BigInt>> = g.elements().iter().map(|s| a.sub(&s.apply(u), u)).collect();
            bounds.insert(v);
        }
        (cocycles, bounds.len())
    }

    fn negation(n: u64) -> AutGroup {
        let a = FgModule::abelian_u64(&[n], 0);
        AutGroup::generated_by(&a, &[a.scalar_map(&b(-1))]).unwrap()
    }

    #[test]
    fn trivial_group_has_no_cohomology() {
        let a = FgModule::abelian_u64(&[2, 6], 0);
        let g = AutGroup::generated_by(&a, &[]).unwrap();
        assert!(h1(&g).unwrap().module.is_zero_module());
    }

    #[test]
    fn negation_on_z4() {
        let h = h1(&negation(4)).unwrap();
        assert_eq!(h.module, FgModule::abelian_u64(&[2], 0));
        assert_eq!((h.cocycles, h.coboundaries), (b(4), b(2)));
        assert_eq!(brute_force(&negation(4)), (4, 2));
    }

    #[test]
    fn negation_on_z3() {
        assert!(h1(&negation(3)).unwrap().module.is_zero_module());
        assert_eq!(brute_force(&negation(3)), (3, 3));
    }

    #[test]
    fn gl2_on_klein_matches_enumeration() {
        let v = FgModule::abelian_u64(&[2, 2], 0);
        let s = ModuleMap::new(v.clone(), v.clone(), IntMatrix::from_i64(2, 2, &[0, 1, 1, 0])).unwrap();
        let t = ModuleMap::new(v.clone(), v.clone(), IntMatrix::from_i64(2, 2, &[1, 1, 0, 1])).unwrap();
        let g = AutGroup::generated_by(&v, &[s, t]).unwrap();
        let h = h1(&g).unwrap();
        let (z, bd) = brute_force(&g);
        assert_eq!((h.cocycles.clone(), h.coboundaries.clone()), (b(z as i64), b(bd as i64)));
        assert!(h.annihilated_by_group_order());
    }

    #[test]
    fn coboundary_witness_and_cocycle_test() {
        let g = negation(4);
        let a = g.module().clone();
        // f(σ) = σ(1) − 1 = −2
        let vals: Vec<Vec<BigInt>> = g.elements().iter().map(|s| a.sub(&s.apply(&[b(1)]), &[b(1)])).collect();
        assert!(is_cocycle(&g, &vals).unwrap());
        assert!(coboundary_witness(&g, &vals).unwrap().is_some());
        let odd: Vec<Vec<BigInt>> =
            g.elements().iter().map(|s| if s == &a.identity_map() { vec![b(0)] } else { vec![b(1)] }).collect();
        assert!(is_cocycle(&g, &odd).unwrap());
        assert!(coboundary_witness(&g, &odd).unwrap().is_none());
    }
}
