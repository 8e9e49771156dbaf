//! Reduction of a rank-2 matrix to an equivalent `3 x m`, and then `3 x 3`,
//! instance.
//!
//! Two matrices with the same column count are equivalent for the rank
//! question when they have the same row space, the same row lattice, and
//! the same cone `{x : Ax >= 0}`. The `3 x m` matrix keeps the two rows of
//! `A` that vanish on the extreme rays of `col(A) ∩ R^n_+` and adds a third
//! row completing the row lattice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::diagram::{build_diagram, check_nonnegative, halfplane_cone_rays, require_rank2};
use crate::error::{Error, Result};
use crate::exact::{
    ext_gcd, gcd, lattice_coords, rank_exact, row_lattice_basis, same_lattice, solve2, IntMatrix, PlanePoint,
};

/// How the third row was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B3Construction {
    /// Reduced basis `(a1, a2)` of the row lattice.
    pub basis: (Vec<BigInt>, Vec<BigInt>),
    /// Coordinates `(p, q)` of `b1` in that basis.
    pub coords: (BigInt, BigInt),
    /// `(r, s)` with `r*p - s*q = 1`.
    pub bezout: (BigInt, BigInt),
    /// `s*a1 + r*a2` after sign and `b1`-offset normalization.
    pub b3_bar: Vec<BigInt>,
    /// Sign applied to the raw completion and the multiple of `b1` subtracted.
    pub normalization: (i8, BigInt),
    /// Rational coefficients of `b3_bar` in `(b1, b2)`.
    pub b3_bar_coeffs: (BigRational, BigRational),
    /// Multiples of `b1` and `b2` added to reach nonnegative coefficients.
    pub shift: (BigInt, BigInt),
    pub primitivized: bool,
    /// Pairwise coordinate determinants of `(b1, b2)`, `(b1, b3)`, `(b2, b3)`.
    pub certificate: [BigInt; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageTrace {
    /// Rows (0-based, ascending) vanishing on the two extreme rays.
    pub row_choices: (usize, usize),
    pub construction: B3Construction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: IntMatrix,
    pub three_by_m: IntMatrix,
    pub three_by_three: IntMatrix,
    /// `A -> B`.
    pub first: StageTrace,
    /// `B^T -> C^T`.
    pub second: StageTrace,
}

/// Divides a lattice element by the gcd of its coordinates in `basis`.
pub fn primitivize_in_lattice(v: &[BigInt], basis: (&[BigInt], &[BigInt])) -> Result<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    crate::exact::primitive_in_lattice(v, basis.0, basis.1)
}

fn combo(x: &BigInt, u: &[BigInt], y: &BigInt, w: &[BigInt]) -> Vec<BigInt> {
    u.iter().zip(w).map(|(a, b)| x * a + y * b).collect()
}

fn coords_in(basis: (&[BigInt], &[BigInt]), v: &[BigInt]) -> Result<(BigInt, BigInt)> {
    lattice_coords(basis.0, basis.1, v)?.ok_or(Error::NotInLattice)
}

fn pair_det(p: &(BigInt, BigInt), q: &(BigInt, BigInt)) -> BigInt {
    &p.0 * &q.1 - &p.1 * &q.0
}

fn ceil_rat(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// Builds `B = [b1; b2; b3]` from a nonnegative rank-2 matrix.
pub fn build_3xm(a: &IntMatrix) -> Result<(IntMatrix, StageTrace)> {
    check_nonnegative(a)?;
    require_rank2(a)?;
    let d = build_diagram(a)?;
    let (i, j) = {
        let [x, y] = d.vanishing_rows;
        (x.min(y), x.max(y))
    };
    let (a1, a2) = row_lattice_basis(a)?;
    let basis = (a1.as_slice(), a2.as_slice());
    let b1 = primitivize_in_lattice(&a.row(i), basis)?;
    let b2 = primitivize_in_lattice(&a.row(j), basis)?;

    let (p, q) = coords_in(basis, &b1)?;
    let (g, x, y) = ext_gcd(&p, &q)?;
    if !g.is_one() {
        return Err(Error::Internal("primitive row has non-coprime lattice coordinates".into()));
    }
    // x*p + y*q = 1, so r = x and s = -y give r*p - s*q = 1
    let (r, s) = (x, -y);
    let raw = combo(&s, &a1, &r, &a2);
    let (alpha, beta) = solve2(&b1, &b2, &raw)?.ok_or(Error::Internal("completion left the row space".into()))?;

    // b3_bar is determined up to sign and multiples of b1; fix beta < 0 and
    // alpha in (0, 1] so the result does not depend on the lattice basis
    let sign: i8 = if beta.is_positive() { -1 } else { 1 };
    let (alpha, beta, raw) = if sign < 0 {
        (-alpha, -beta, raw.iter().map(|v| -v).collect::<Vec<_>>())
    } else {
        (alpha, beta, raw)
    };
    let offset: BigInt = ceil_rat(&alpha) - 1;
    let b3_bar = combo(&BigInt::one(), &raw, &-&offset, &b1);
    let alpha = alpha - BigRational::from_integer(offset.clone());

    let zero = BigRational::zero();
    let m1 = ceil_rat(&(-&alpha).max(zero.clone()));
    let m2 = ceil_rat(&(-&beta).max(zero));
    let shifted = b3_bar.iter().zip(&b1).zip(&b2).map(|((v, x), y)| v + &m1 * x + &m2 * y).collect::<Vec<_>>();

    let c1 = coords_in(basis, &b1)?;
    let c2 = coords_in(basis, &b2)?;
    let certificate_for = |v: &[BigInt]| -> Result<[BigInt; 3]> {
        let c3 = coords_in(basis, v)?;
        Ok([pair_det(&c1, &c2), pair_det(&c1, &c3), pair_det(&c2, &c3)])
    };
    let generates = |dets: &[BigInt; 3]| gcd(&gcd(&dets[0], &dets[1]), &dets[2]).is_one();

    let candidate = primitivize_in_lattice(&shifted, basis)?;
    let cand_cert = certificate_for(&candidate)?;
    let (b3, primitivized, certificate) = if candidate != shifted && generates(&cand_cert) {
        (candidate, true, cand_cert)
    } else {
        let cert = certificate_for(&shifted)?;
        (shifted, false, cert)
    };
    if !generates(&certificate) {
        return Err(Error::Internal("third row does not complete the row lattice".into()));
    }

    let out = IntMatrix::from_rows(&[b1.clone(), b2, b3])?;
    if !out.is_nonnegative() {
        return Err(Error::Internal("reduced matrix has a negative entry".into()));
    }
    let construction = B3Construction {
        basis: (a1.clone(), a2.clone()),
        coords: (p, q),
        bezout: (r, s),
        b3_bar,
        normalization: (sign, offset),
        b3_bar_coeffs: (alpha, beta),
        shift: (m1, m2),
        primitivized,
        certificate,
    };
    Ok((out, StageTrace { row_choices: (i, j), construction }))
}

/// `C = build_3xm(build_3xm(A)^T)^T`, a `3 x 3` matrix equivalent to `A`
/// for the rank question.
pub fn reduce_to_3x3(a: &IntMatrix) -> Result<(IntMatrix, ReductionTrace)> {
    let (b, first) = build_3xm(a)?;
    let (d, second) = build_3xm(&b.transpose())?;
    let c = d.transpose();
    Ok((c.clone(), ReductionTrace { input: a.clone(), three_by_m: b, three_by_three: c, first, second }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub row_space: bool,
    pub row_lattice: bool,
    pub cone: bool,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.row_space && self.row_lattice && self.cone
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        write!(
            f,
            "row space: {}, row lattice: {}, cone: {}",
            mark(self.row_space),
            mark(self.row_lattice),
            mark(self.cone)
        )
    }
}

/// Plane forms of each row in the rational basis `(r1, r2)` of the row
/// space, each scaled by a positive integer to clear denominators.
fn forms_in(m: &IntMatrix, r1: &[BigInt], r2: &[BigInt]) -> Result<Vec<PlanePoint>> {
    (0..m.rows())
        .map(|i| {
            let (x, y) = solve2(r1, r2, &m.row(i))?.ok_or(Error::Internal("row outside the row space".into()))?;
            let den = x.denom().lcm(y.denom());
            let scale = |v: &BigRational| (v * BigRational::from_integer(den.clone())).to_integer();
            Ok(PlanePoint { x: scale(&x), y: scale(&y) })
        })
        .collect()
}

/// Checks the three equivalence conditions between `a` and `b`.
pub fn validate_equivalence(a: &IntMatrix, b: &IntMatrix) -> Result<EquivalenceReport> {
    if a.cols() != b.cols() {
        return Err(Error::Dimension(format!("column counts differ: {} vs {}", a.cols(), b.cols())));
    }
    require_rank2(a)?;
    require_rank2(b)?;
    let mut stacked = a.row_vecs();
    stacked.extend(b.row_vecs());
    let row_space = rank_exact(&IntMatrix::from_rows(&stacked)?) == 2;
    if !row_space {
        return Ok(EquivalenceReport { row_space, row_lattice: false, cone: false });
    }

    let (a1, a2) = row_lattice_basis(a)?;
    let (b1, b2) = row_lattice_basis(b)?;
    let row_lattice = same_lattice((&a1, &a2), (&b1, &b2))?;

    // both cones live in the coordinates of (a1, a2); A is nonnegative so
    // y0 = (a1 . 1, a2 . 1) is strictly inside A's cone on every nonzero row
    let p = forms_in(a, &a1, &a2)?;
    let q = forms_in(b, &a1, &a2)?;
    let sum = |v: &[BigInt]| v.iter().sum::<BigInt>();
    let y0 = PlanePoint { x: sum(&a1), y: sum(&a2) };
    let strictly_inside = |forms: &[PlanePoint]| forms.iter().all(|f| f.is_zero() || f.dot(&y0).is_positive());
    let cone = strictly_inside(&p)
        && strictly_inside(&q)
        && match (halfplane_cone_rays(&p, &y0), halfplane_cone_rays(&q, &y0)) {
            (Some([(pu, _), (pd, _)]), Some([(qu, _), (qd, _)])) => pu == qu && pd == qd,
            _ => false,
        };
    Ok(EquivalenceReport { row_space, row_lattice, cone })
}

fn write_vec(f: &mut fmt::Formatter<'_>, v: &[BigInt]) -> fmt::Result {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    write!(f, "({})", parts.join(", "))
}

fn write_stage(f: &mut fmt::Formatter<'_>, name: &str, s: &StageTrace) -> fmt::Result {
    let c = &s.construction;
    writeln!(f, "[{name}]")?;
    writeln!(f, "row_choices = {} {}", s.row_choices.0, s.row_choices.1)?;
    write!(f, "lattice_basis = ")?;
    write_vec(f, &c.basis.0)?;
    write!(f, " ")?;
    write_vec(f, &c.basis.1)?;
    writeln!(f)?;
    writeln!(f, "b1_coords = ({}, {})", c.coords.0, c.coords.1)?;
    writeln!(f, "bezout_r_s = ({}, {})", c.bezout.0, c.bezout.1)?;
    write!(f, "b3_bar = ")?;
    write_vec(f, &c.b3_bar)?;
    writeln!(f)?;
    writeln!(f, "b3_bar_normalization = sign {} offset {}", c.normalization.0, c.normalization.1)?;
    writeln!(f, "b3_bar_coeffs = ({}, {})", c.b3_bar_coeffs.0, c.b3_bar_coeffs.1)?;
    writeln!(f, "shift = ({}, {})", c.shift.0, c.shift.1)?;
    writeln!(f, "primitivized = {}", c.primitivized)?;
    writeln!(f, "certificate = {} {} {}", c.certificate[0], c.certificate[1], c.certificate[2])
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[input]\n{}", self.input)?;
        writeln!(f, "[three_by_m]\n{}", self.three_by_m)?;
        writeln!(f, "[three_by_three]\n{}", self.three_by_three)?;
        write_stage(f, "stage1", &self.first)?;
        write_stage(f, "stage2", &self.second)
    }
}
