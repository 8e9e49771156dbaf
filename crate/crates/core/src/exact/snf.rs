//! Smith Normal Form with both unimodular transforms.
//!
//! Pivoting: at each stage the nonzero entry of least absolute value in the
//! trailing submatrix (first in row-major order on ties) is moved to the
//! diagonal, its row and column are reduced by truncated division, and the
//! stage repeats until both are clear. A trailing entry not divisible by the
//! pivot is folded into the pivot row, which forces a smaller pivot on the
//! next pass and yields the divisibility chain directly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `a = s * d * t` with `s`, `t` unimodular and `d` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub d: IntMatrix,
    pub t: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

struct Work {
    d: IntMatrix,
    s: IntMatrix,
    t: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.s.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.t.swap_rows(a, b);
    }

    /// d.row[dst] += k * d.row[src], compensated in `s`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(dst, src, k);
        self.s.add_col_multiple(src, dst, &-k);
    }

    /// d.col[dst] += k * d.col[src], compensated in `t`.
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(dst, src, k);
        self.t.add_row_multiple(src, dst, &-k);
    }

    fn smallest_from(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in k..self.d.rows() {
            for j in k..self.d.cols() {
                let v = &self.d[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    let unit = a.is_one();
                    best = Some((i, j, a));
                    if unit {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `k` below/right of the pivot; true if exact.
    fn eliminate(&mut self, k: usize) -> bool {
        let mut clean = true;
        for i in k + 1..self.d.rows() {
            if self.d[(i, k)].is_zero() {
                continue;
            }
            let q = &self.d[(i, k)] / &self.d[(k, k)];
            if !q.is_zero() {
                self.add_row(i, k, &-q);
            }
            clean &= self.d[(i, k)].is_zero();
        }
        for j in k + 1..self.d.cols() {
            if self.d[(k, j)].is_zero() {
                continue;
            }
            let q = &self.d[(k, j)] / &self.d[(k, k)];
            if !q.is_zero() {
                self.add_col(j, k, &-q);
            }
            clean &= self.d[(k, j)].is_zero();
        }
        clean
    }

    fn non_divisible_row(&self, k: usize) -> Option<usize> {
        let p = &self.d[(k, k)];
        for i in k + 1..self.d.rows() {
            for j in k + 1..self.d.cols() {
                if !(&self.d[(i, j)] % p).is_zero() {
                    return Some(i);
                }
            }
        }
        None
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (n, m) = (a.rows(), a.cols());
    let mut w = Work { d: a.clone(), s: IntMatrix::identity(n), t: IntMatrix::identity(m) };
    for k in 0..n.min(m) {
        loop {
            let Some((i, j)) = w.smallest_from(k) else {
                return SnfResult { s: w.s, d: w.d, t: w.t };
            };
            w.swap_rows(k, i);
            w.swap_cols(k, j);
            if !w.eliminate(k) {
                continue;
            }
            match w.non_divisible_row(k) {
                Some(i) => w.add_row(k, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d[(k, k)].is_negative() {
            w.d.negate_row(k);
            w.s.negate_col(k);
        }
    }
    SnfResult { s: w.s, d: w.d, t: w.t }
}
