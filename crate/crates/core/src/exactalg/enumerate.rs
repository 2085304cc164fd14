//! Submodule enumeration for finite modules.

use std::collections::HashSet;

use super::module::{FgModule, Submodule};
use crate::error::{Error, Result};

/// Deterministic order: by size, then by Hermite basis.
fn sort_lattice(subs: &mut [Submodule]) {
    subs.sort_by(|a, b| {
        a.order().cmp(&b.order()).then_with(|| a.basis().entries().cmp(b.basis().entries()))
    });
}

/// All cyclic submodules `R·x` of a finite module, without repetition.
pub fn cyclic_submodules(m: &FgModule) -> Result<Vec<Submodule>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in m.elements()? {
        let c = Submodule::from_elements(m, &[x]);
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    sort_lattice(&mut out);
    Ok(out)
}

/// The full submodule lattice of a finite module, built by closing the
/// cyclic submodules under sums. Refuses lattices with more than `cap`
/// members.
pub fn all_submodules(m: &FgModule, cap: usize) -> Result<Vec<Submodule>> {
    if !m.is_finite() {
        return Err(Error::InfiniteSearch("submodules of an infinite module".into()));
    }
    let cyclic = cyclic_submodules(m)?;
    let mut seen: HashSet<Submodule> = cyclic.iter().cloned().collect();
    if seen.len() > cap {
        return Err(Error::LatticeTooLarge(seen.len()));
    }
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                if c.is_subset(s) {
                    continue;
                }
                let t = s.sum(c);
                if seen.insert(t.clone()) {
                    if seen.len() > cap {
                        return Err(Error::LatticeTooLarge(seen.len()));
                    }
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Submodule> = seen.into_iter().collect();
    sort_lattice(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Ring;
    use num_bigint::BigInt;

    #[test]
    fn klein_four_has_five_subgroups() {
        let v = FgModule::abelian_u64(&[2, 2], 0);
        assert_eq!(cyclic_submodules(&v).unwrap().len(), 4);
        assert_eq!(all_submodules(&v, 100).unwrap().len(), 5);
    }

    #[test]
    fn cyclic_group_subgroups_match_divisors() {
        for n in [1u64, 4, 12, 30] {
            let c = FgModule::abelian_u64(&[n], 0);
            let d = crate::arith::divisors(&BigInt::from(n)).len();
            assert_eq!(all_submodules(&c, 1000).unwrap().len(), d);
        }
    }

    #[test]
    fn z2_cubed_has_sixteen_subgroups() {
        let v = FgModule::abelian_u64(&[2, 2, 2], 0);
        assert_eq!(all_submodules(&v, 100).unwrap().len(), 16);
        assert_eq!(all_submodules(&v, 10).unwrap_err(), Error::LatticeTooLarge(11));
    }

    #[test]
    fn gaussian_submodules_of_residue_ring() {
        // Z[i]/(2): ideals are 0, (1+i)/(2), whole
        let r = Ring::quadratic(BigInt::from(0), BigInt::from(1)).unwrap();
        let m = FgModule::free(r.clone(), 1);
        let two = crate::exactalg::IntMatrix::identity(2).scale(&BigInt::from(2));
        let q = FgModule::from_relations(r, 2, &two, m.action()).unwrap().module;
        assert_eq!(all_submodules(&q, 100).unwrap().len(), 3);
    }
}
