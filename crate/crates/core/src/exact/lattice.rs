//! Rank, exact two-column solves and rank-2 lattice bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::arith::{self, floor_div};
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Rank over the rationals by fraction-free elimination.
pub fn rank_exact(a: &IntMatrix) -> usize {
    let mut m = a.clone();
    let (n, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !m[(i, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(rank, p);
        for i in rank + 1..n {
            for j in col + 1..cols {
                let v = (&m[(i, j)] * &m[(rank, col)] - &m[(i, col)] * &m[(rank, j)]) / &prev;
                m[(i, j)] = v;
            }
            m[(i, col)] = BigInt::zero();
        }
        prev = m[(rank, col)].clone();
        rank += 1;
    }
    rank
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Some nonzero 2x2 minor of the pair, if any (first pair of coordinates).
fn independent_coords(v1: &[BigInt], v2: &[BigInt]) -> Option<(usize, usize, BigInt)> {
    for i in 0..v1.len() {
        for j in i + 1..v1.len() {
            let det = &v1[i] * &v2[j] - &v1[j] * &v2[i];
            if !det.is_zero() {
                return Some((i, j, det));
            }
        }
    }
    None
}

/// gcd of all 2x2 minors of a pair of vectors; 1 exactly when the pair
/// spans a saturated lattice.
pub fn minors_gcd(v1: &[BigInt], v2: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for i in 0..v1.len() {
        for j in i + 1..v1.len() {
            g = g.gcd(&(&v1[i] * &v2[j] - &v1[j] * &v2[i]));
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

/// Lagrange-Gauss reduction of a rank-2 lattice basis.
///
/// The output satisfies `|a1| <= |a2|` and `2|<a1, a2>| <= |a1|^2`, which is
/// the same as `|a2 +- a1| >= |a2|`.
pub fn reduce_basis_rank2(v1: &[BigInt], v2: &[BigInt]) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    if v1.len() != v2.len() {
        return Err(Error::Dimension("basis vectors of different length".into()));
    }
    if independent_coords(v1, v2).is_none() {
        return Err(Error::Dependent);
    }
    let (mut a, mut b) = (v1.to_vec(), v2.to_vec());
    let mut na = dot(&a, &a);
    let mut nb = dot(&b, &b);
    if na > nb {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut na, &mut nb);
    }
    loop {
        // nearest integer to <a,b>/<a,a>, halves rounded down
        let two = BigInt::from(2);
        let mu = floor_div(&(&two * dot(&a, &b) + &na), &(&two * &na));
        if !mu.is_zero() {
            for (bi, ai) in b.iter_mut().zip(&a) {
                *bi -= &mu * ai;
            }
            nb = dot(&b, &b);
        }
        if nb >= na {
            return Ok((a, b));
        }
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut na, &mut nb);
    }
}

/// Exact solution of `[c1 c2] * x = y`; `None` when inconsistent.
pub fn solve2(c1: &[BigInt], c2: &[BigInt], y: &[BigInt]) -> Result<Option<(BigRational, BigRational)>> {
    if c1.len() != c2.len() || c1.len() != y.len() {
        return Err(Error::Dimension("solve2 operands of different length".into()));
    }
    let (i, j, det) = independent_coords(c1, c2).ok_or(Error::Rank { expected: "2", found: 1 })?;
    let nx = &y[i] * &c2[j] - &y[j] * &c2[i];
    let ny = &c1[i] * &y[j] - &c1[j] * &y[i];
    // residual check scaled by det to stay in integers
    for k in 0..y.len() {
        if &c1[k] * &nx + &c2[k] * &ny != &y[k] * &det {
            return Ok(None);
        }
    }
    Ok(Some((BigRational::new(nx, det.clone()), BigRational::new(ny, det))))
}

/// Matrix form of [`solve2`] for an `n x 2` coefficient matrix.
pub fn solve2_matrix(b: &IntMatrix, y: &[BigInt]) -> Result<Option<(BigRational, BigRational)>> {
    if b.cols() != 2 {
        return Err(Error::Dimension("solve2 needs exactly two columns".into()));
    }
    solve2(&b.col(0), &b.col(1), y)
}

/// Integer coordinates of `v` in the basis `(a1, a2)`, if `v` lies in the
/// lattice they generate.
pub fn lattice_coords(a1: &[BigInt], a2: &[BigInt], v: &[BigInt]) -> Result<Option<(BigInt, BigInt)>> {
    Ok(solve2(a1, a2, v)?.and_then(|(p, q)| {
        (p.is_integer() && q.is_integer()).then(|| (p.to_integer(), q.to_integer()))
    }))
}

/// A basis of the lattice generated by the rows of a rank-2 matrix (not its
/// saturation), Lagrange-Gauss reduced.
///
/// With `a = s*d*t` and `s` unimodular, the rows of `a` generate the same
/// lattice as the nonzero rows of `d*t`, i.e. `d1*t[0]` and `d2*t[1]`.
pub fn row_lattice_basis(a: &IntMatrix) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    if rank != 2 {
        return Err(Error::Rank { expected: "2", found: rank });
    }
    let scaled = |k: usize| -> Vec<BigInt> {
        let d = &snf.d[(k, k)];
        snf.t.row(k).iter().map(|x| x * d).collect()
    };
    reduce_basis_rank2(&scaled(0), &scaled(1))
}

/// Whether two rank-2 lattice bases generate the same lattice.
pub fn same_lattice(
    (a1, a2): (&[BigInt], &[BigInt]),
    (b1, b2): (&[BigInt], &[BigInt]),
) -> Result<bool> {
    for v in [b1, b2] {
        if lattice_coords(a1, a2, v)?.is_none() {
            return Ok(false);
        }
    }
    for v in [a1, a2] {
        if lattice_coords(b1, b2, v)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Divides a lattice element by the gcd of its coordinates in `(a1, a2)`.
pub fn primitive_in_lattice(v: &[BigInt], a1: &[BigInt], a2: &[BigInt]) -> Result<Vec<BigInt>> {
    let (p, q) = lattice_coords(a1, a2, v)?.ok_or(Error::NotInLattice)?;
    let g = arith::gcd(&p, &q);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let (p, q) = (p / &g, q / &g);
    Ok(a1.iter().zip(a2).map(|(x, y)| &p * x + &q * y).collect())
}

/// Sign-aware helper used by callers that compare determinants.
pub fn det2(p: (&BigInt, &BigInt), q: (&BigInt, &BigInt)) -> BigInt {
    p.0 * q.1 - p.1 * q.0
}
