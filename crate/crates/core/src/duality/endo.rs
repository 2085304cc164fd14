//! `End_R(T)` seen at a finite level `e`, as a ring of `s × s` matrices mod `e`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::matrix::{hnf_coefficients, solution_lattice};
use crate::exactalg::{hnf, IntMatrix};
use crate::pointed::TorsionTarget;

/// A subring of `M_s(Z/e)`, given by additive generators that together span
/// a ring containing the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndLevel {
    level: BigInt,
    s: usize,
    gens: Vec<IntMatrix>,
}

impl EndLevel {
    /// The full matrix ring `M_s(Z/e)`.
    pub fn full(s: usize, level: &BigInt) -> EndLevel {
        let mut gens = Vec::new();
        for i in 0..s {
            for j in 0..s {
                let mut m = IntMatrix::zeros(s, s);
                m[(i, j)] = BigInt::one();
                gens.push(m);
            }
        }
        EndLevel { level: level.clone(), s, gens }.reduced()
    }

    /// The matrices mod `e` commuting with `action`.
    pub fn commutant(action: &IntMatrix, level: &BigInt) -> Result<EndLevel> {
        let s = action.rows();
        if action.cols() != s {
            return Err(Error::Dimension("the action must be square".into()));
        }
        // unknown X[k][l] at index k*s + l; constraint (i, j): (AX − XA)[i][j] ≡ 0
        let idx = |k: usize, l: usize| k * s + l;
        let mut c = IntMatrix::zeros(s * s, s * s);
        for i in 0..s {
            for j in 0..s {
                let col = idx(i, j);
                for k in 0..s {
                    c[(idx(k, j), col)] += &action[(i, k)];
                    c[(idx(i, k), col)] -= &action[(k, j)];
                }
            }
        }
        let lat = solution_lattice(&c, &vec![level.clone(); s * s]);
        let gens = (0..lat.rows())
            .map(|r| IntMatrix::new(s, s, lat.row(r).to_vec()).expect("square"))
            .collect();
        Ok(EndLevel { level: level.clone(), s, gens }.reduced())
    }

    /// The ring acting on `T` at level `e`: full matrices over Z, the
    /// commutant of ω over a quadratic order.
    pub fn for_target(target: &TorsionTarget, level: &BigInt) -> Result<EndLevel> {
        match target.action() {
            None => Ok(EndLevel::full(target.s(), level)),
            Some(a) => EndLevel::commutant(a, level),
        }
    }

    /// The ring generated by `gens` and the identity (closed under products).
    pub fn generated_by(s: usize, level: &BigInt, gens: &[IntMatrix]) -> Result<EndLevel> {
        if gens.iter().any(|g| g.rows() != s || g.cols() != s) {
            return Err(Error::Dimension(format!("generators must be {s}x{s}")));
        }
        let mut all = vec![IntMatrix::identity(s)];
        all.extend(gens.iter().cloned());
        let mut e = EndLevel { level: level.clone(), s, gens: all }.reduced();
        loop {
            let mut grown = e.gens.clone();
            for a in &e.gens {
                for b in &e.gens {
                    grown.push(a.mul(b));
                }
            }
            let next = EndLevel { level: level.clone(), s, gens: grown }.reduced();
            if next.gens == e.gens {
                return Ok(e);
            }
            e = next;
        }
    }

    fn reduced(mut self) -> EndLevel {
        let s = self.s;
        if self.level.is_one() || s == 0 {
            self.gens = vec![];
            return self;
        }
        let h = self.lattice();
        self.gens = (0..h.rows())
            .map(|r| {
                let v: Vec<BigInt> = h.row(r).iter().map(|x| x.mod_floor(&self.level)).collect();
                IntMatrix::new(s, s, v).expect("shape")
            })
            .filter(|m| !m.is_zero())
            .collect();
        self
    }

    /// Hermite basis of the lift of the ring to `Z^{s²}` (containing `e Z^{s²}`).
    fn lattice(&self) -> IntMatrix {
        let s = self.s;
        let mut rows: Vec<Vec<BigInt>> = self.gens.iter().map(|g| g.entries().to_vec()).collect();
        for k in 0..s * s {
            let mut e = vec![BigInt::zero(); s * s];
            e[k] = self.level.clone();
            rows.push(e);
        }
        hnf(&IntMatrix::from_rows(s * s, rows).expect("shape")).without_zero_rows()
    }

    pub fn level(&self) -> &BigInt {
        &self.level
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Additive generators mod `e`.
    pub fn generators(&self) -> &[IntMatrix] {
        &self.gens
    }

    /// Whether `m` (taken mod `e`) lies in the ring.
    pub fn contains(&self, m: &IntMatrix) -> bool {
        let basis = self.lattice();
        hnf_coefficients(&basis, m.entries()).is_some()
    }

    /// `|ring|`, the index of its lattice lift in `Z^{s²}` over `e Z^{s²}`.
    pub fn order(&self) -> BigInt {
        let basis = self.lattice();
        let det: BigInt = (0..basis.rows()).map(|i| basis[(i, i)].clone()).product();
        num_traits::pow(self.level.clone(), self.s * self.s) / det
    }
}
