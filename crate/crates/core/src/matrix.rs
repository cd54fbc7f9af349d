//! Dense matrices and vectors over arbitrary-precision integers, with the
//! two canonical forms (Hermite and Smith) that drive every lattice
//! computation in this crate.
//!
//! HNF convention: row style, pivots positive, entries above a pivot reduced
//! into `[0, pivot)`, zero rows at the bottom. This makes the HNF of a matrix
//! a canonical representative of its row space, so lattice equality is plain
//! comparison of stored bases.

use crate::int::{int, Int};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type IntVector = Vec<Int>;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.entries[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<IntVector>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length must equal column count");
            entries.extend(r);
        }
        IntMatrix { rows: nrows, cols, entries }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> IntVector {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> IntVector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_slice(&self, r: usize) -> &[Int] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Int]> {
        self.entries.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Matrix applied to a column vector.
    pub fn apply(&self, v: &[Int]) -> IntVector {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Int::zero();
                for c in 0..self.cols {
                    if !v[c].is_zero() && !self[(r, c)].is_zero() {
                        acc += &self[(r, c)] * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[Int]) -> IntVector {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        (0..self.cols)
            .map(|c| {
                let mut acc = Int::zero();
                for r in 0..self.rows {
                    if !v[r].is_zero() && !self[(r, c)].is_zero() {
                        acc += &v[r] * &self[(r, c)];
                    }
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = std::mem::take(&mut self[(r, c)]);
            self[(r, c)] = -v;
        }
    }

    /// row[dst] += q * row[src]
    fn add_multiple_of_row(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let add = q * &self[(src, c)];
            self[(dst, c)] += add;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = std::mem::take(&mut self[(r, c)]);
            self[(r, c)] = -v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_multiple_of_col(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let add = q * &self[(r, src)];
            self[(r, dst)] += add;
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self[(r, k)].is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    if !rhs[(k, c)].is_zero() {
                        let add = &self[(r, k)] * &rhs[(k, c)];
                        out[(r, c)] += add;
                    }
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

pub struct Hnf {
    pub h: IntMatrix,
    /// Unimodular transform with `u * m = h`.
    pub u: IntMatrix,
    /// Number of nonzero rows of `h`.
    pub rank: usize,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

/// Row Hermite normal form with transform, `u * m = h`, `u` unimodular.
pub fn hermite_normal_form(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let (rows, cols) = (h.rows(), h.cols());
    let mut pivots = Vec::new();
    let mut pr = 0; // next pivot row
    for pc in 0..cols {
        if pr == rows {
            break;
        }
        // eliminate below by gcd chaining
        loop {
            // find row with smallest nonzero |entry| in column pc at or below pr
            let mut best: Option<usize> = None;
            for r in pr..rows {
                if !h[(r, pc)].is_zero()
                    && best.is_none_or(|b| h[(r, pc)].abs() < h[(b, pc)].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pr, b);
            u.swap_rows(pr, b);
            if h[(pr, pc)].is_negative() {
                h.negate_row(pr);
                u.negate_row(pr);
            }
            let mut done = true;
            let pivot = h[(pr, pc)].clone();
            for r in pr + 1..rows {
                if !h[(r, pc)].is_zero() {
                    let q = -h[(r, pc)].div_floor(&pivot);
                    h.add_multiple_of_row(r, pr, &q);
                    u.add_multiple_of_row(r, pr, &q);
                    if !h[(r, pc)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !h[(pr, pc)].is_zero() {
            // reduce entries above the pivot into [0, pivot)
            let pivot = h[(pr, pc)].clone();
            for r in 0..pr {
                let q = -h[(r, pc)].div_floor(&pivot);
                h.add_multiple_of_row(r, pr, &q);
                u.add_multiple_of_row(r, pr, &q);
            }
            pivots.push(pc);
            pr += 1;
        }
    }
    Hnf { h, u, rank: pr, pivots }
}

pub struct Snf {
    pub d: IntMatrix,
    /// `u * m * v = d`, both unimodular.
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries, each dividing the next.
    pub invariant_factors: Vec<Int>,
}

/// Smith normal form with transforms: `u * m * v = d`, `d` diagonal with
/// nonnegative entries `d_i | d_{i+1}`.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let (rows, cols) = (d.rows(), d.cols());
    let n = rows.min(cols);
    let mut t = 0;
    'outer: while t < n {
        // move a nonzero entry of the trailing block to (t, t)
        let mut found = None;
        'search: for r in t..rows {
            for c in t..cols {
                if !d[(r, c)].is_zero() {
                    found = Some((r, c));
                    break 'search;
                }
            }
        }
        let Some((r0, c0)) = found else { break 'outer };
        d.swap_rows(t, r0);
        u.swap_rows(t, r0);
        d.swap_cols(t, c0);
        v.swap_cols(t, c0);

        loop {
            // clear column t below the pivot by gcd chaining
            loop {
                let mut progress = false;
                for r in t + 1..rows {
                    if d[(r, t)].is_zero() {
                        continue;
                    }
                    if d[(r, t)].abs() < d[(t, t)].abs() {
                        d.swap_rows(t, r);
                        u.swap_rows(t, r);
                    }
                    let q = -d[(r, t)].div_floor(&d[(t, t)]);
                    d.add_multiple_of_row(r, t, &q);
                    u.add_multiple_of_row(r, t, &q);
                    if !d[(r, t)].is_zero() {
                        progress = true;
                    }
                }
                if !progress {
                    break;
                }
            }
            // clear row t right of the pivot; column swaps here can refill
            // the column, hence the outer loop
            loop {
                let mut progress = false;
                for c in t + 1..cols {
                    if d[(t, c)].is_zero() {
                        continue;
                    }
                    if d[(t, c)].abs() < d[(t, t)].abs() {
                        d.swap_cols(t, c);
                        v.swap_cols(t, c);
                    }
                    let q = -d[(t, c)].div_floor(&d[(t, t)]);
                    d.add_multiple_of_col(c, t, &q);
                    v.add_multiple_of_col(c, t, &q);
                    if !d[(t, c)].is_zero() {
                        progress = true;
                    }
                }
                if !progress {
                    break;
                }
            }
            if (t + 1..rows).all(|r| d[(r, t)].is_zero()) {
                break;
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        // enforce divisibility d[t][t] | all entries of the trailing block
        let pivot = d[(t, t)].clone();
        if !pivot.is_one() {
            for r in t + 1..rows {
                for c in t + 1..cols {
                    if !(&d[(r, c)] % &pivot).is_zero() {
                        // fold row r into row t and restart this pivot
                        d.add_multiple_of_row(t, r, &Int::one());
                        u.add_multiple_of_row(t, r, &Int::one());
                        continue 'outer;
                    }
                }
            }
        }
        t += 1;
    }
    let invariant_factors =
        (0..t).map(|i| d[(i, i)].clone()).filter(|x| !x.is_zero()).collect();
    Snf { d, u, v, invariant_factors }
}

/// Inverse of a unimodular matrix (HNF of a unimodular matrix is the
/// identity, so the transform is exactly the inverse).
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let hnf = hermite_normal_form(m);
    assert!(hnf.h.is_identity(), "matrix is not unimodular");
    hnf.u
}

/// Basis of the right kernel `{ x : m.x = 0 }`; the returned rows always span
/// a saturated (primitive) sublattice since they come from a unimodular
/// transform.
pub fn right_kernel(m: &IntMatrix) -> Vec<IntVector> {
    let t = m.transpose();
    let hnf = hermite_normal_form(&t);
    (hnf.rank..t.rows()).map(|r| hnf.u.row(r)).collect()
}

pub fn determinant(m: &IntMatrix) -> Int {
    assert_eq!(m.rows(), m.cols(), "determinant needs a square matrix");
    // fraction-free Gaussian elimination (Bareiss)
    let n = m.rows();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                return Int::zero();
            };
            a.swap_rows(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = val;
            }
            a[(i, k)] = Int::zero();
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}
