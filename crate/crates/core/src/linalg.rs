//! Exact integer matrices and Smith normal form.
//!
//! Entries are arbitrary-precision integers: intermediate values during
//! elimination can exceed any fixed machine width even for small inputs,
//! so everything here runs on [`BigInt`].

use std::cmp::min;
use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    /// Builds a matrix from explicit rows. Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "all rows must have the same length"
        );
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j].clone().into())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    /// Panics on non-square input. The empty 0x0 matrix has determinant 1.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant requires a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut denom = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &denom; // exact by Bareiss
                }
            }
            denom = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        IntMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &rhs[(k, j)]).sum()
        })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith decomposition `U * A * V = D` of an integer matrix.
///
/// `U` and `V` are unimodular, `D` is diagonal with nonnegative entries in
/// a divisibility chain (every entry divides the next, zeros trailing).
/// `diag` repeats the diagonal of `D` as a plain vector of length
/// `min(rows, cols)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub diag: Vec<BigInt>,
}

/// Computes the Smith normal form of `a` together with the transforms.
///
/// The diagonal is canonical: nonnegative, each entry divides the next,
/// zeros after all nonzero entries. Empty matrices are fine and yield an
/// empty diagonal.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let mut w = Reducer {
        d: a.clone(),
        u: IntMatrix::identity(a.rows()),
        v: IntMatrix::identity(a.cols()),
    };
    w.reduce();
    let k = min(a.rows(), a.cols());
    let diag = (0..k).map(|i| w.d[(i, i)].clone()).collect();
    SnfResult {
        u: w.u,
        d: w.d,
        v: w.v,
        diag,
    }
}

/// Rank of `a` over the integers: the number of nonzero Smith diagonal
/// entries.
pub fn int_rank(a: &IntMatrix) -> usize {
    snf(a).diag.iter().filter(|d| !d.is_zero()).count()
}

/// Elimination state. Every row operation on `d` is mirrored on `u`, every
/// column operation on `v`, so `u * a * v == d` holds throughout.
struct Reducer {
    d: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn reduce(&mut self) {
        let steps = min(self.d.rows(), self.d.cols());
        'steps: for t in 0..steps {
            loop {
                let Some((pi, pj)) = self.min_abs_entry(t) else {
                    break 'steps; // remaining submatrix is zero
                };
                if pi != t {
                    self.swap_rows(t, pi);
                }
                if pj != t {
                    self.swap_cols(t, pj);
                }
                if !self.clear_column(t) {
                    continue; // a remainder became the new smallest entry
                }
                if !self.clear_row(t) {
                    continue;
                }
                // Pivot must divide the rest of the submatrix so the
                // diagonal forms a chain; if it does not, pull the offending
                // row up and keep reducing.
                if let Some(i) = self.non_divisible_row(t) {
                    self.add_row(t, i);
                    continue;
                }
                break;
            }
        }
        self.normalize_signs();
    }

    /// Position of a nonzero entry of minimum absolute value in the
    /// submatrix at or after `(t, t)`, if any.
    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let e = &self.d[(i, j)];
                if e.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.d[b].magnitude() <= e.magnitude() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Reduces every entry below the pivot by row operations. Returns true
    /// if the column is now clear below the pivot.
    fn clear_column(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.d.rows() {
            if self.d[(i, t)].is_zero() {
                continue;
            }
            let q = div_round(&self.d[(i, t)], &self.d[(t, t)]);
            if !q.is_zero() {
                self.add_row_multiple(i, t, &-q);
            }
            if !self.d[(i, t)].is_zero() {
                clean = false;
            }
        }
        clean
    }

    /// Same as `clear_column`, on the pivot row via column operations.
    fn clear_row(&mut self, t: usize) -> bool {
        let mut clean = true;
        for j in t + 1..self.d.cols() {
            if self.d[(t, j)].is_zero() {
                continue;
            }
            let q = div_round(&self.d[(t, j)], &self.d[(t, t)]);
            if !q.is_zero() {
                self.add_col_multiple(j, t, &-q);
            }
            if !self.d[(t, j)].is_zero() {
                clean = false;
            }
        }
        clean
    }

    /// First row whose submatrix entries are not all divisible by the pivot.
    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let pivot = &self.d[(t, t)];
        for i in t + 1..self.d.rows() {
            for j in t + 1..self.d.cols() {
                if !self.d[(i, j)].is_multiple_of(pivot) {
                    return Some(i);
                }
            }
        }
        None
    }

    fn normalize_signs(&mut self) {
        for i in 0..min(self.d.rows(), self.d.cols()) {
            if self.d[(i, i)].is_negative() {
                self.d.negate_row(i);
                self.u.negate_row(i);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
    }

    /// row[dst] += row[src]
    fn add_row(&mut self, dst: usize, src: usize) {
        self.add_row_multiple(dst, src, &BigInt::one());
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
    }
}

/// Division rounded to the nearest integer (ties toward zero). Keeps the
/// remainders, and with them the coefficient growth, small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if r.magnitude() * 2u32 > *b.magnitude() {
        if (a.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}
