//! Seeded random instances shared by `verify` and the test suites.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use divkummer::exactalg::{FgModule, IntMatrix, Ring, Submodule};

pub type Gen = ChaCha8Rng;

pub fn rng(seed: u64) -> Gen {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn matrix(g: &mut Gen, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| BigInt::from(g.gen_range(-bound..=bound))).collect();
    IntMatrix::new(rows, cols, data).expect("sized data")
}

/// A finite abelian group of order at most `max_order`, as a random
/// non-diagonal presentation.
pub fn finite_module(g: &mut Gen, max_order: u64) -> FgModule {
    loop {
        let n = g.gen_range(1..=3);
        let m = matrix(g, n, n, 6);
        let det = m.determinant();
        if det != BigInt::from(0) && det.magnitude() <= &max_order.into() {
            return FgModule::from_relations(Ring::Integers, n, &m, None).expect("integer relations").module;
        }
    }
}

/// A finite abelian group given by random cyclic factors.
pub fn abelian(g: &mut Gen, max_order: u64, rank: usize) -> FgModule {
    let mut factors = Vec::new();
    let mut order = 1;
    for _ in 0..g.gen_range(0..=3) {
        let d = g.gen_range(2..=12u64);
        if order * d > max_order {
            break;
        }
        order *= d;
        factors.push(d);
    }
    FgModule::abelian_u64(&factors, rank)
}

pub fn element(g: &mut Gen, m: &FgModule) -> Vec<BigInt> {
    let raw: Vec<BigInt> = m
        .moduli()
        .iter()
        .map(|d| if d == &BigInt::from(0) { BigInt::from(g.gen_range(-4..=4)) } else { BigInt::from(g.gen_range(0..64)) % d })
        .collect();
    m.reduce(&raw)
}

/// The submodule generated by up to `k` random elements.
pub fn submodule(g: &mut Gen, m: &FgModule, k: usize) -> Submodule {
    let n = g.gen_range(0..=k);
    let elems: Vec<Vec<BigInt>> = (0..n).map(|_| element(g, m)).collect();
    Submodule::from_elements(m, &elems)
}

/// A random submodule of `sub`, as a submodule of the same ambient.
pub fn smaller(g: &mut Gen, sub: &Submodule, k: usize) -> Submodule {
    let gens = sub.generators();
    let elems: Vec<Vec<BigInt>> = (0..g.gen_range(0..=k))
        .map(|_| {
            let mut acc = sub.ambient().zero_element();
            for x in &gens {
                let c = BigInt::from(g.gen_range(0..6));
                acc = sub.ambient().add(&acc, &sub.ambient().scale(&c, x));
            }
            acc
        })
        .collect();
    Submodule::from_elements(sub.ambient(), &elems)
}
