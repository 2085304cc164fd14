//! Dense integer matrices, Hermite and Smith normal forms, and the lattice
//! solvers every module computation is built from.
//!
//! Everything is row-oriented: a matrix acts on row vectors from the right,
//! and a lattice is the integer row span of a basis matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to shape an empty row list.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(IntMatrix { rows: n, cols, data })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must match shape");
        IntMatrix { rows, cols, data: entries.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [BigInt] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "vector length must match row count");
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = &self[(r, c)];
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column counts must agree");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row counts must agree");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend(self.row(r).iter().cloned());
            data.extend(other.row(r).iter().cloned());
        }
        IntMatrix { rows: self.rows, cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend(self.row(r).iter().cloned());
        }
        IntMatrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (k, &c) in idx.iter().enumerate() {
                out[(r, k)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.cols, "row length must match column count");
        self.data.extend(row);
        self.rows += 1;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if !s.is_zero() {
                let v = s * q;
                self.data[dst * self.cols + c] -= v;
            }
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = &self.data[r * self.cols + src];
            if !s.is_zero() {
                let v = s * q;
                self.data[r * self.cols + dst] -= v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in self.row_mut(r) {
            *x = -std::mem::take(x);
        }
    }

    /// Drops all-zero rows.
    pub fn without_zero_rows(&self) -> IntMatrix {
        let keep: Vec<usize> =
            (0..self.rows).filter(|&r| self.row(r).iter().any(|x| !x.is_zero())).collect();
        self.select_rows(&keep)
    }

    /// Determinant by fraction-free elimination; square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

/// Row-style Hermite normal form.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    hnf_impl(m, false).0
}

/// Returns `(H, U)` with `U` unimodular and `U·m = H` in row Hermite form.
pub fn hnf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u) = hnf_impl(m, true);
    (h, u.expect("transform requested"))
}

fn hnf_impl(m: &IntMatrix, track: bool) -> (IntMatrix, Option<IntMatrix>) {
    let mut h = m.clone();
    let mut u = track.then(|| IntMatrix::identity(m.rows));
    let rows = h.rows;
    let mut pr = 0;
    for c in 0..h.cols {
        if pr == rows {
            break;
        }
        let mut found = false;
        loop {
            // smallest nonzero |entry| in the column, lowest row on ties
            let mut piv: Option<usize> = None;
            for r in pr..rows {
                let x = &h[(r, c)];
                if !x.is_zero() && piv.is_none_or(|p| x.abs() < h[(p, c)].abs()) {
                    piv = Some(r);
                }
            }
            let Some(p) = piv else { break };
            found = true;
            h.swap_rows(pr, p);
            if let Some(u) = u.as_mut() {
                u.swap_rows(pr, p);
            }
            let mut clean = true;
            for r in pr + 1..rows {
                if h[(r, c)].is_zero() {
                    continue;
                }
                let q = h[(r, c)].div_floor(&h[(pr, c)]);
                h.row_axpy(r, pr, &q);
                if let Some(u) = u.as_mut() {
                    u.row_axpy(r, pr, &q);
                }
                if !h[(r, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[(pr, c)].is_negative() {
            h.negate_row(pr);
            if let Some(u) = u.as_mut() {
                u.negate_row(pr);
            }
        }
        for r in 0..pr {
            let q = h[(r, c)].div_floor(&h[(pr, c)]);
            h.row_axpy(r, pr, &q);
            if let Some(u) = u.as_mut() {
                u.row_axpy(r, pr, &q);
            }
        }
        pr += 1;
    }
    (h, u)
}

/// Smith decomposition `S = U·m·V` with `U`, `V` unimodular; `v_inv` is `V⁻¹`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    /// The diagonal of `S` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).collect()
    }
}

pub fn snf(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);
    let n = r.min(c);
    let mut t = 0;
    'outer: while t < n {
        loop {
            // smallest nonzero |entry| in the trailing block; lowest row, then lowest column on ties
            let mut piv: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &s[(i, j)];
                    if !x.is_zero() && piv.is_none_or(|(pi, pj)| x.abs() < s[(pi, pj)].abs()) {
                        piv = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = piv else { break 'outer };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut dirty = false;
            for i in t + 1..r {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                s.row_axpy(i, t, &q);
                u.row_axpy(i, t, &q);
                dirty |= !s[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                s.col_axpy(j, t, &q);
                v.col_axpy(j, t, &q);
                // V⁻¹ picks up the inverse column operation as a row operation
                v_inv.row_axpy(t, j, &-&q);
                dirty |= !s[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let p = s[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    s.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Smith { u, s, v, v_inv }
}

/// Basis (in Hermite form, zero rows dropped) of `{x ∈ Zᵐ : x·c_j ≡ 0 mod moduli_j}`
/// where `c_j` are the columns of `c`; a zero modulus means exact vanishing.
pub fn solution_lattice(c: &IntMatrix, moduli: &[BigInt]) -> IntMatrix {
    assert_eq!(c.cols, moduli.len(), "one modulus per constraint column");
    let m = c.rows;
    let mut basis = IntMatrix::identity(m);
    let mut since_reduce = 0usize;
    for (j, modulus) in moduli.iter().enumerate() {
        let b = modulus.abs();
        let col = c.column(j);
        let mut w: Vec<BigInt> = (0..basis.rows)
            .map(|r| {
                let mut acc = BigInt::zero();
                for (x, y) in basis.row(r).iter().zip(&col) {
                    if !x.is_zero() && !y.is_zero() {
                        acc += x * y;
                    }
                }
                if b.is_zero() {
                    acc
                } else {
                    acc.mod_floor(&b)
                }
            })
            .collect();
        if w.iter().all(Zero::is_zero) {
            continue;
        }
        // Euclid on the constraint values, mirrored on the basis rows.
        loop {
            let mut piv: Option<usize> = None;
            for (r, x) in w.iter().enumerate() {
                if !x.is_zero() && piv.is_none_or(|p| x.abs() < w[p].abs()) {
                    piv = Some(r);
                }
            }
            let p = piv.expect("nonzero constraint value exists");
            let mut clean = true;
            for r in 0..w.len() {
                if r == p || w[r].is_zero() {
                    continue;
                }
                let q = w[r].div_floor(&w[p]);
                let wp = w[p].clone();
                w[r] -= &q * wp;
                basis.row_axpy(r, p, &q);
                if !w[r].is_zero() {
                    clean = false;
                }
            }
            if clean {
                let g = w[p].abs();
                if b.is_zero() {
                    let keep: Vec<usize> = (0..basis.rows).filter(|&r| r != p).collect();
                    basis = basis.select_rows(&keep);
                } else {
                    let mult = &b / g.gcd(&b);
                    for x in basis.row_mut(p) {
                        *x *= &mult;
                    }
                }
                break;
            }
        }
        since_reduce += 1;
        if since_reduce >= 8 {
            basis = hnf(&basis).without_zero_rows();
            since_reduce = 0;
        }
    }
    hnf(&basis).without_zero_rows()
}

/// Reduces `v` against a Hermite basis; returns the coefficients if `v` lies
/// in the lattice.
#[allow(clippy::needless_range_loop)]
pub fn hnf_coefficients(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coeffs = vec![BigInt::zero(); basis.rows];
    let mut col = 0;
    for r in 0..basis.rows {
        let row = basis.row(r);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { continue };
        while col < p {
            if !rest[col].is_zero() {
                return None;
            }
            col += 1;
        }
        let (q, rem) = rest[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        coeffs[r] = q;
        col = p + 1;
    }
    if rest.iter().all(Zero::is_zero) {
        Some(coeffs)
    } else {
        None
    }
}

/// Solves `x·a = v` over the integers.
pub fn solve_left(a: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let (h, u) = hnf_with_transform(a);
    let y = hnf_coefficients(&h, v)?;
    Some(u.apply(&y))
}

/// Solves `x·c ≡ target` with column `j` read modulo `moduli[j]` (zero = exact).
pub fn solve_mod(c: &IntMatrix, moduli: &[BigInt], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut a = c.clone();
    for (j, b) in moduli.iter().enumerate() {
        if !b.is_zero() {
            let mut row = vec![BigInt::zero(); c.cols];
            row[j] = b.clone();
            a.push_row(row);
        }
    }
    let x = solve_left(&a, target)?;
    Some(x[..c.rows].to_vec())
}

/// Describes a lattice `Λ ⊆ Zⁿ` by congruences: `v ∈ Λ` iff `(v·w)_j ≡ 0 mod moduli_j`.
pub fn lattice_congruences(basis: &IntMatrix) -> (IntMatrix, Vec<BigInt>) {
    let n = basis.cols;
    let sm = snf(basis);
    let diag = sm.diagonal();
    let moduli: Vec<BigInt> = (0..n).map(|j| diag.get(j).cloned().unwrap_or_else(BigInt::zero)).collect();
    let keep: Vec<usize> = (0..n).filter(|&j| !moduli[j].is_one()).collect();
    (sm.v.select_cols(&keep), keep.iter().map(|&j| moduli[j].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(rows, cols, e)
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&IntMatrix::identity(2)), IntMatrix::identity(2));
        assert_eq!(hnf(&IntMatrix::zeros(2, 2)), IntMatrix::zeros(2, 2));
        assert_eq!(hnf(&m(2, 2, &[4, 6, 2, 3])), m(2, 2, &[2, 3, 0, 0]));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let h = hnf(&m(2, 2, &[1, 7, 0, 3]));
        assert_eq!(h, m(2, 2, &[1, 1, 0, 3]));
        let (h, u) = hnf_with_transform(&m(3, 2, &[3, 5, 6, 1, -9, 4]));
        assert_eq!(u.mul(&m(3, 2, &[3, 5, 6, 1, -9, 4])), h);
        assert_eq!(u.determinant().abs(), BigInt::one());
    }

    #[test]
    fn snf_examples() {
        let d = snf(&m(2, 2, &[2, 0, 0, 3]));
        assert_eq!(d.s, m(2, 2, &[1, 0, 0, 6]));
        assert_eq!(snf(&IntMatrix::identity(3)).s, IntMatrix::identity(3));
        assert_eq!(snf(&m(1, 1, &[0])).s, m(1, 1, &[0]));
    }

    #[test]
    fn snf_tracks_inverse() {
        let a = m(3, 4, &[2, 4, 6, 8, 1, 3, 5, 7, 0, 0, 9, 12]);
        let d = snf(&a);
        assert_eq!(d.u.mul(&a).mul(&d.v), d.s);
        assert_eq!(d.v.mul(&d.v_inv), IntMatrix::identity(4));
    }

    #[test]
    fn solution_lattice_modular() {
        // x with 2x ≡ 0 mod 4 → 2Z
        let l = solution_lattice(&m(1, 1, &[2]), &[BigInt::from(4)]);
        assert_eq!(l, m(1, 1, &[2]));
        // (x, y) with x + y = 0 exactly
        let l = solution_lattice(&m(2, 1, &[1, 1]), &[BigInt::zero()]);
        assert_eq!(l, m(1, 2, &[1, -1]));
    }

    #[test]
    fn solve_mod_finds_particular_solution() {
        let x = solve_mod(&m(1, 1, &[3]), &[BigInt::from(7)], &[BigInt::from(2)]).unwrap();
        assert_eq!((&x[0] * BigInt::from(3) - BigInt::from(2)).mod_floor(&BigInt::from(7)), BigInt::zero());
        assert!(solve_mod(&m(1, 1, &[2]), &[BigInt::from(4)], &[BigInt::from(1)]).is_none());
    }

    #[test]
    fn congruences_describe_lattice() {
        let basis = m(2, 2, &[2, 0, 0, 3]);
        let (w, moduli) = lattice_congruences(&basis);
        let inside = |v: &[i64]| {
            let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            w.apply(&v).iter().zip(&moduli).all(|(x, b)| if b.is_zero() { x.is_zero() } else { x.is_multiple_of(b) })
        };
        assert!(inside(&[2, 3]));
        assert!(inside(&[4, -6]));
        assert!(!inside(&[1, 0]));
        assert!(!inside(&[0, 1]));
    }
}
