//! The fixed-seed property corpus behind `divkummer verify`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::{json, Value};

use divkummer::autseq::AutGroup;
use divkummer::duality::duality_check_abelian;
use divkummer::exactalg::{snf, FgModule, IntMatrix, ModuleMap, Submodule};
use divkummer::kummer::{h1, kummer_bound, BoundInputs};
use divkummer::modfilter::{baer_check_default, divide_filter, is_jtorsion, torsion, IdealFilter};

use crate::commands::Outcome;
use crate::doc::{count, int, opt_field, CliResult};
use crate::gen::{self, Gen};

/// Product of all `k x k` minors' gcd, for `k = 1..=min(rows, cols)`.
pub fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let r = m.rows().min(m.cols());
    (1..=r)
        .map(|k| {
            let mut g = BigInt::zero();
            for rows in subsets(m.rows(), k) {
                for cols in subsets(m.cols(), k) {
                    g = g.gcd(&m.select_rows(&rows).select_cols(&cols).determinant());
                }
            }
            g
        })
        .collect()
}

/// Checks a Smith form against the determinantal divisors of `m`.
pub fn snf_agrees(m: &IntMatrix) -> bool {
    let s = snf(m);
    let d = s.diagonal();
    let dd = determinantal_divisors(m);
    let mut prev = BigInt::one();
    for (k, dk) in dd.iter().enumerate() {
        let expected = if dk.is_zero() { BigInt::zero() } else { dk / &prev };
        if d[k] != expected {
            return false;
        }
        if !dk.is_zero() {
            prev = dk.clone();
        }
    }
    let chain = d.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() });
    let diag_only = (0..s.s.rows()).all(|i| (0..s.s.cols()).all(|j| i == j || s.s[(i, j)].is_zero()));
    chain
        && diag_only
        && d.iter().all(|x| !x.is_negative())
        && s.u.mul(m).mul(&s.v) == s.s
        && s.u.determinant().abs().is_one()
        && s.v.determinant().abs().is_one()
        && s.v.mul(&s.v_inv) == IntMatrix::identity(m.cols())
}

/// `D_J(M, N)` for `M ⊆ N` inside a common ambient, computed inside `N`.
pub fn divide_inside(j: &IdealFilter, m: &Submodule, n: &Submodule) -> divkummer::Result<Submodule> {
    let (_, inc) = n.to_module();
    let d = divide_filter(j, &inc.preimage(m))?;
    Ok(inc.image_of(&d))
}

/// The five division identities on `M ⊆ N ⊆ P` (with `P` the ambient) and
/// the direct sum `M ⊕ N` as modules.
pub fn division_identities(j: &IdealFilter, m: &Submodule, n: &Submodule) -> divkummer::Result<[bool; 5]> {
    let d_n = divide_inside(j, m, n)?;
    let d_p = divide_filter(j, m)?;
    let one = d_n == d_p.intersect(n);
    let two = divide_inside(j, m, &d_n)? == d_n;
    let (nm, inc) = n.to_module();
    let m_in_n = inc.preimage(m);
    let (q, proj) = m_in_n.quotient();
    let three = torsion(j, &q)? == proj.image_of(&inc.preimage(&d_n));
    let four = (d_n == *n) == is_jtorsion(j, &q)?;
    let (a, _) = m.to_module();
    let ds = a.direct_sum(&nm)?;
    let sum = ds.inj[0].image_of(&torsion(j, &a)?).sum(&ds.inj[1].image_of(&torsion(j, &nm)?));
    let five = torsion(j, &ds.module)? == sum;
    Ok([one, two, three, four, five])
}

/// `q[p] = 0`, by counting elements of order dividing `p`.
pub fn p_torsion_free(q: &FgModule, p: u64) -> bool {
    let p = BigInt::from(p);
    q.elements().expect("finite").iter().filter(|x| q.is_zero_element(&q.scale(&p, x))).count() == 1
}

/// A random automorphism group of a finite module, generated by up to two
/// random automorphisms.
pub fn random_aut_group(g: &mut Gen, a: &FgModule) -> AutGroup {
    let mut gens = Vec::new();
    for _ in 0..g.gen_range(1..=2) {
        for _ in 0..50 {
            let raw = gen::matrix(g, a.ngens(), a.ngens(), 5);
            if let Ok(f) = ModuleMap::new(a.clone(), a.clone(), a.reduce_matrix(&raw)) {
                if f.is_isomorphism() {
                    gens.push(f);
                    break;
                }
            }
        }
    }
    if gens.is_empty() {
        gens.push(a.scalar_map(&BigInt::from(-1)));
    }
    AutGroup::generated_by(a, &gens).expect("small group")
}

pub const FILTERS: [&str; 5] = ["2^inf", "3^inf", "inf", "0", "1"];

#[derive(Default)]
struct Tally {
    rows: Vec<(String, usize, usize)>,
}

impl Tally {
    fn record(&mut self, name: &str, ok: bool) {
        match self.rows.iter_mut().find(|r| r.0 == name) {
            Some(r) => {
                r.1 += ok as usize;
                r.2 += !ok as usize;
            }
            None => self.rows.push((name.to_string(), ok as usize, !ok as usize)),
        }
    }
}

/// Runs `cases` instances of every property from `seed`.
pub fn run(seed: u64, cases: usize) -> Value {
    let mut g = gen::rng(seed);
    let mut t = Tally::default();
    for _ in 0..cases {
        let (r, c) = (g.gen_range(1..=4), g.gen_range(1..=4));
        let m = gen::matrix(&mut g, r, c, 20);
        t.record("snf_determinantal_divisors", snf_agrees(&m));
    }
    for name in FILTERS {
        let j: IdealFilter = name.parse().expect("known filter");
        for _ in 0..cases {
            let p = gen::finite_module(&mut g, 1000);
            let n = gen::submodule(&mut g, &p, 3);
            let m = gen::smaller(&mut g, &n, 2);
            let ok = division_identities(&j, &m, &n).map(|r| r.iter().all(|x| *x)).unwrap_or(false);
            t.record(&format!("division_identities[{name}]"), ok);
        }
    }
    for _ in 0..cases {
        let q = gen::abelian(&mut g, 64, 0);
        for p in [2u64, 3] {
            let j = IdealFilter::p_power(p).expect("prime");
            let ok = baer_check_default(&j, &q).map(|v| v == p_torsion_free(&q, p)).unwrap_or(false);
            t.record("baer_p_divisibility", ok);
        }
    }
    for _ in 0..cases {
        let a = gen::abelian(&mut g, 32, 0);
        let grp = random_aut_group(&mut g, &a);
        t.record("h1_killed_by_group_order", h1(&grp).map(|h| h.annihilated_by_group_order()).unwrap_or(false));
    }
    for _ in 0..cases.min(20) {
        let a = gen::abelian(&mut g, 16, 0);
        let s = g.gen_range(1..=2);
        t.record("duality_bijection", duality_check_abelian(&a, s).map(|r| r.holds()).unwrap_or(false));
    }
    for _ in 0..cases {
        let dnm = [2, 3, 6][g.gen_range(0..3)];
        let r = g.gen_range(0..=3);
        let inputs = BoundInputs::new(BigInt::from(dnm), BigInt::one(), BigInt::one(), r, 2).expect("positive");
        let ok = kummer_bound(&inputs, &[], &BigInt::from(36)).map(|b| b.c == inputs.closed_form()).unwrap_or(false);
        t.record("bound_closed_form", ok);
    }
    let passed: usize = t.rows.iter().map(|r| r.1).sum();
    let failed: usize = t.rows.iter().map(|r| r.2).sum();
    let properties: Vec<Value> =
        t.rows.iter().map(|(n, p, f)| json!({"property": n, "passed": p, "failed": f})).collect();
    json!({"seed": seed.to_string(), "cases": cases, "passed": passed, "failed": failed, "properties": properties})
}

/// `verify` reads an optional `{"seed": "7", "cases": 20}`.
pub fn run_doc(doc: &Value) -> CliResult<Outcome> {
    let seed = match opt_field(doc, "seed") {
        Some(s) => u64::try_from(int(s, "$.seed")?).map_err(|_| crate::doc::schema("$.seed", "out of range"))?,
        None => 0,
    };
    let cases = match opt_field(doc, "cases") {
        Some(c) => count(c, "$.cases")?,
        None => 25,
    };
    Ok(Outcome { result: run(seed, cases), warnings: vec![] })
}
