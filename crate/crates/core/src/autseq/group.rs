//! Finite groups of module automorphisms, as explicit element tables.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{FgModule, IntMatrix, ModuleMap};

/// Largest group returned as a table.
pub const MAX_GROUP_ORDER: usize = 10_000;

#[derive(Clone, Debug)]
pub struct AutGroup {
    module: FgModule,
    elements: Vec<ModuleMap>,
    index: HashMap<IntMatrix, usize>,
    generators: Vec<usize>,
}

impl AutGroup {
    /// Builds the table, checking that `elements` is a group of automorphisms
    /// of `module`: it contains the identity and equals the closure of the
    /// greedily chosen generators.
    pub fn from_elements(module: &FgModule, elements: Vec<ModuleMap>) -> Result<AutGroup> {
        if elements.len() > MAX_GROUP_ORDER {
            return Err(Error::EnumerationLimit { size: BigInt::from(elements.len()), limit: MAX_GROUP_ORDER as u64 });
        }
        let mut index = HashMap::new();
        let mut uniq = Vec::new();
        for e in elements {
            if e.source() != module || e.target() != module || !e.is_isomorphism() {
                return Err(Error::Precondition("group elements must be automorphisms of one module".into()));
            }
            if !index.contains_key(e.matrix()) {
                index.insert(e.matrix().clone(), uniq.len());
                uniq.push(e);
            }
        }
        let id = module.identity_map();
        if !index.contains_key(id.matrix()) {
            return Err(Error::Precondition("the identity is missing".into()));
        }
        let mut g = AutGroup { module: module.clone(), elements: uniq, index, generators: vec![] };
        g.choose_generators()?;
        Ok(g)
    }

    /// The group generated by `gens`, enumerated by breadth-first closure.
    pub fn generated_by(module: &FgModule, gens: &[ModuleMap]) -> Result<AutGroup> {
        let id = module.identity_map();
        let mut seen: HashMap<IntMatrix, usize> = HashMap::from([(id.matrix().clone(), 0)]);
        let mut elements = vec![id];
        let mut k = 0;
        while k < elements.len() {
            for g in gens {
                let y = elements[k].then(g)?;
                if !seen.contains_key(y.matrix()) {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(Error::EnumerationLimit {
                            size: BigInt::from(elements.len() + 1),
                            limit: MAX_GROUP_ORDER as u64,
                        });
                    }
                    seen.insert(y.matrix().clone(), elements.len());
                    elements.push(y);
                }
            }
            k += 1;
        }
        AutGroup::from_elements(module, elements)
    }

    fn closure_of(&self, gens: &[usize]) -> Result<Vec<bool>> {
        let mut seen = vec![false; self.elements.len()];
        let id = self.index[self.module.identity_map().matrix()];
        seen[id] = true;
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.elements[x].then(&self.elements[s])?;
                let Some(&k) = self.index.get(y.matrix()) else {
                    return Err(Error::Precondition("the element set is not closed under composition".into()));
                };
                if !seen[k] {
                    seen[k] = true;
                    queue.push_back(k);
                }
            }
        }
        Ok(seen)
    }

    fn choose_generators(&mut self) -> Result<()> {
        let mut gens = Vec::new();
        let mut covered = self.closure_of(&gens)?;
        while let Some(k) = covered.iter().position(|c| !c) {
            gens.push(k);
            covered = self.closure_of(&gens)?;
        }
        self.generators = gens;
        Ok(())
    }

    pub fn module(&self) -> &FgModule {
        &self.module
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ModuleMap] {
        &self.elements
    }

    pub fn generators(&self) -> Vec<&ModuleMap> {
        self.generators.iter().map(|&k| &self.elements[k]).collect()
    }

    pub fn position(&self, f: &ModuleMap) -> Option<usize> {
        self.index.get(f.matrix()).copied()
    }

    pub fn contains(&self, f: &ModuleMap) -> bool {
        self.position(f).is_some()
    }

    pub fn is_abelian(&self) -> Result<bool> {
        let gens = self.generators();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if a.then(b)? != b.then(a)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
