use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::arith;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// An integer point of the plane.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePoint {
    pub x: BigInt,
    pub y: BigInt,
}

impl PlanePoint {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self { x: x.into(), y: y.into() }
    }

    pub fn origin() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { x: &self.x * k, y: &self.y * k }
    }

    pub fn dot(&self, other: &Self) -> BigInt {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn norm_sq(&self) -> BigInt {
        self.dot(self)
    }

    /// Minimal lattice point on the ray through `self`.
    pub fn primitive(&self) -> Result<Self> {
        let g = arith::gcd(&self.x, &self.y);
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { x: &self.x / &g, y: &self.y / &g })
    }

    pub fn to_vec(&self) -> Vec<BigInt> {
        vec![self.x.clone(), self.y.clone()]
    }

    /// Image under a 2x2 integer matrix acting on column vectors.
    pub fn transform(&self, m: &IntMatrix) -> Self {
        debug_assert!(m.rows() == 2 && m.cols() == 2);
        Self {
            x: &m[(0, 0)] * &self.x + &m[(0, 1)] * &self.y,
            y: &m[(1, 0)] * &self.x + &m[(1, 1)] * &self.y,
        }
    }
}

impl Add for &PlanePoint {
    type Output = PlanePoint;

    fn add(self, rhs: &PlanePoint) -> PlanePoint {
        PlanePoint { x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Sub for &PlanePoint {
    type Output = PlanePoint;

    fn sub(self, rhs: &PlanePoint) -> PlanePoint {
        PlanePoint { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `p.x * q.y - p.y * q.x`; positive when `q` is counterclockwise of `p`.
pub fn cross2(p: &PlanePoint, q: &PlanePoint) -> BigInt {
    &p.x * &q.y - &p.y * &q.x
}

/// Membership of `p` in the closed cone spanned by two non-parallel
/// generators, in either orientation.
pub fn in_cone(p: &PlanePoint, g1: &PlanePoint, g2: &PlanePoint) -> bool {
    let (lo, hi) = if cross2(g1, g2).is_negative() { (g2, g1) } else { (g1, g2) };
    !cross2(lo, p).is_negative() && !cross2(p, hi).is_negative()
}

/// Inverse of a unimodular 2x2 matrix.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    let det = m.det()?;
    if det.abs() != BigInt::from(1) {
        return Err(Error::Internal(format!("matrix with determinant {det} is not unimodular")));
    }
    let data = vec![
        &det * &m[(1, 1)],
        -(&det * &m[(0, 1)]),
        -(&det * &m[(1, 0)]),
        &det * &m[(0, 0)],
    ];
    IntMatrix::new(2, 2, data)
}
