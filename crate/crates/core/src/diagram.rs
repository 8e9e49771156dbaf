//! Planar picture of a rank-2 nonnegative matrix.
//!
//! The saturated column lattice `col(A) ∩ Z^n` is identified with `Z^2`
//! through a basis taken from the Smith Normal Form; columns become integer
//! points and the cone `col(A) ∩ R^n_+` becomes a planar cone bounded by the
//! kernels of the rows of the basis.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    ceil_div, cross2, ext_gcd, in_cone, inverse_unimodular, minors_gcd, rank_exact, smith_normal_form, solve2_matrix,
    IntMatrix, PlanePoint,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    /// `n x 2`; its columns generate `col(A) ∩ Z^n`.
    pub basis: IntMatrix,
    /// Coordinates of the columns of `A` in `basis`, in column order.
    pub points: Vec<PlanePoint>,
    /// Primitive generators of the two extreme rays of the cone.
    pub cone_gens: [PlanePoint; 2],
    /// For each cone generator, the (0-based) row of `A` vanishing on it.
    pub vanishing_rows: [usize; 2],
    pub source_dims: (usize, usize),
}

/// A diagram normalized so the cone is spanned by `(1, 0)` and `(c, d)`
/// with `0 <= c < d`.
///
/// The stored `diagram.basis` already absorbs the inverse transform, so
/// `basis * points` still reproduces the source matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalDiagram {
    pub diagram: Diagram,
    /// Unimodular map taking the original plane coordinates to these.
    pub transform: IntMatrix,
    /// Which original cone generator (1 or 2) was sent to `(1, 0)`.
    pub canon_index: usize,
}

impl CanonicalDiagram {
    pub fn second_generator(&self) -> &PlanePoint {
        &self.diagram.cone_gens[1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeRay {
    /// Primitive integer vector spanning the ray.
    pub ray: Vec<BigInt>,
    /// 0-based index of a row of `A` whose linear form vanishes on the ray.
    pub vanishing_row: usize,
}

pub(crate) fn check_nonnegative(a: &IntMatrix) -> Result<()> {
    match a.first_negative() {
        Some((row, col)) => Err(Error::Negative { row, col }),
        None => Ok(()),
    }
}

/// Basis of `col(A) ∩ Z^n`: the first two columns of the left SNF transform.
pub fn column_lattice_basis(a: &IntMatrix) -> Result<IntMatrix> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    if rank != 2 {
        return Err(Error::Rank { expected: "2", found: rank });
    }
    snf.s.select_columns(&[0, 1])
}

pub fn point_coordinates(a: &IntMatrix, basis: &IntMatrix) -> Result<Vec<PlanePoint>> {
    (0..a.cols())
        .map(|j| match solve2_matrix(basis, &a.col(j))? {
            Some((x, y)) if x.is_integer() && y.is_integer() => Ok(PlanePoint { x: x.to_integer(), y: y.to_integer() }),
            _ => Err(Error::NonIntegralCoordinates(j)),
        })
        .collect()
}

/// Indices of the two forms cutting out `{p : f_k . p >= 0}` around a
/// strictly interior point, as `(counterclockwise side, clockwise side)`.
///
/// Zero forms are skipped. Each form's kernel, oriented counterclockwise
/// from `interior`, is `(-f.y, f.x)`; the bounding form on each side is the
/// one whose kernel makes the smallest angle with `interior`. Ties keep the
/// smallest index.
pub(crate) fn bounding_forms(forms: &[PlanePoint], interior: &PlanePoint) -> Option<(usize, usize)> {
    let kernel = |f: &PlanePoint| PlanePoint { x: -&f.y, y: f.x.clone() };
    let mut ccw: Option<(usize, PlanePoint)> = None;
    let mut cw: Option<(usize, PlanePoint)> = None;
    for (k, f) in forms.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        debug_assert!(f.dot(interior).is_positive());
        let z = kernel(f);
        if ccw.as_ref().is_none_or(|(_, best)| cross2(&z, best).is_positive()) {
            ccw = Some((k, z.clone()));
        }
        if cw.as_ref().is_none_or(|(_, best)| cross2(&z, best).is_negative()) {
            cw = Some((k, z));
        }
    }
    Some((ccw?.0, cw?.0))
}

/// Boundary rays (plane coordinates, primitive) of `{p : forms . p >= 0}`,
/// returned as `[(ccw ray, form), (cw ray, form)]`.
pub(crate) fn halfplane_cone_rays(forms: &[PlanePoint], interior: &PlanePoint) -> Option<[(PlanePoint, usize); 2]> {
    let (ccw, cw) = bounding_forms(forms, interior)?;
    let f = &forms[ccw];
    let up = PlanePoint { x: -&f.y, y: f.x.clone() }.primitive().ok()?;
    let f = &forms[cw];
    let down = PlanePoint { x: f.y.clone(), y: -&f.x }.primitive().ok()?;
    Some([(up, ccw), (down, cw)])
}

/// Ray order: rotating from the first nonzero column towards the next
/// column not parallel to it, the ray reached first comes first.
fn plane_cone(basis: &IntMatrix, points: &[PlanePoint]) -> Result<([PlanePoint; 2], [usize; 2])> {
    let forms: Vec<PlanePoint> =
        (0..basis.rows()).map(|i| PlanePoint { x: basis[(i, 0)].clone(), y: basis[(i, 1)].clone() }).collect();
    let interior = points.iter().fold(PlanePoint::origin(), |acc, p| &acc + p);
    let [(up, i_up), (down, i_down)] =
        halfplane_cone_rays(&forms, &interior).ok_or(Error::Rank { expected: "2", found: 0 })?;
    let first = points.iter().find(|p| !p.is_zero()).ok_or(Error::Rank { expected: "2", found: 0 })?;
    let second = points
        .iter()
        .find(|q| !cross2(first, q).is_zero())
        .ok_or(Error::Rank { expected: "2", found: 1 })?;
    if cross2(first, second).is_positive() {
        Ok(([up, down], [i_up, i_down]))
    } else {
        Ok(([down, up], [i_down, i_up]))
    }
}

/// The two extreme rays of `col(A) ∩ R^n_+`, each with a vanishing row.
pub fn extreme_rays(a: &IntMatrix) -> Result<[ExtremeRay; 2]> {
    let d = build_diagram(a)?;
    let ray = |k: usize| ExtremeRay { ray: d.basis.mul_vec(&d.cone_gens[k].to_vec()), vanishing_row: d.vanishing_rows[k] };
    Ok([ray(0), ray(1)])
}

pub fn build_diagram(a: &IntMatrix) -> Result<Diagram> {
    check_nonnegative(a)?;
    let basis = column_lattice_basis(a)?;
    let points = point_coordinates(a, &basis)?;
    let (cone_gens, vanishing_rows) = plane_cone(&basis, &points)?;
    Ok(Diagram { basis, points, cone_gens, vanishing_rows, source_dims: (a.rows(), a.cols()) })
}

/// Sends cone generator `r` (1 or 2) to `(1, 0)` and the other to `(c, d)`
/// with `0 <= c < d`: a Bézout map, then a sign flip of the second
/// coordinate if needed, then the shear by the least `γ` with `c + γd >= 0`.
pub fn canonicalize(d: &Diagram, r: usize) -> Result<CanonicalDiagram> {
    if r != 1 && r != 2 {
        return Err(Error::Parameter(format!("canonization index must be 1 or 2, got {r}")));
    }
    let (g, other) = (&d.cone_gens[r - 1], &d.cone_gens[2 - r]);
    let (one, alpha, beta) = ext_gcd(&g.x, &g.y)?;
    if !one.is_one() {
        return Err(Error::Internal(format!("cone generator {g} is not primitive")));
    }
    let mut t = IntMatrix::new(2, 2, vec![alpha, beta, -&g.y, g.x.clone()])?;
    let o = other.transform(&t);
    if o.y.is_zero() {
        return Err(Error::Internal("cone generators are parallel".into()));
    }
    if o.y.is_negative() {
        t.negate_row(1);
    }
    let o = other.transform(&t);
    let gamma = ceil_div(&-&o.x, &o.y);
    let shear = IntMatrix::new(2, 2, vec![BigInt::one(), gamma, BigInt::zero(), BigInt::one()])?;
    let t = &shear * &t;
    let t_inv = inverse_unimodular(&t)?;
    let diagram = Diagram {
        basis: &d.basis * &t_inv,
        points: d.points.iter().map(|p| p.transform(&t)).collect(),
        cone_gens: [g.transform(&t), other.transform(&t)],
        vanishing_rows: [d.vanishing_rows[r - 1], d.vanishing_rows[2 - r]],
        source_dims: d.source_dims,
    };
    Ok(CanonicalDiagram { diagram, transform: t, canon_index: r })
}

pub fn canonical_diagram(a: &IntMatrix, r: usize) -> Result<CanonicalDiagram> {
    canonicalize(&build_diagram(a)?, r)
}

impl Diagram {
    /// Checks every structural invariant against the source matrix.
    pub fn validate(&self, a: &IntMatrix) -> Result<()> {
        let fail = |msg: &str| Err(Error::Internal(msg.to_string()));
        if self.source_dims != (a.rows(), a.cols()) || self.points.len() != a.cols() {
            return fail("diagram dimensions do not match the matrix");
        }
        if !minors_gcd(&self.basis.col(0), &self.basis.col(1)).is_one() {
            return fail("basis is not saturated");
        }
        for (j, p) in self.points.iter().enumerate() {
            if self.basis.mul_vec(&p.to_vec()) != a.col(j) {
                return fail("basis * point does not reproduce a column");
            }
        }
        let [g1, g2] = &self.cone_gens;
        if cross2(g1, g2).is_zero() {
            return fail("cone generators are parallel");
        }
        for g in [g1, g2] {
            if g.primitive().ok().as_ref() != Some(g) {
                return fail("cone generator is not primitive");
            }
        }
        if !self.points.iter().all(|p| in_cone(p, g1, g2)) {
            return fail("a point lies outside the cone");
        }
        Ok(())
    }
}

impl CanonicalDiagram {
    pub fn validate(&self, a: &IntMatrix) -> Result<()> {
        self.diagram.validate(a)?;
        let [g1, g2] = &self.diagram.cone_gens;
        if *g1 != PlanePoint::new(1, 0) || g2.x.is_negative() || g2.x >= g2.y {
            return Err(Error::Internal("cone is not in canonical position".into()));
        }
        if self.transform.det()?.abs() != BigInt::one() {
            return Err(Error::Internal("canonical transform is not unimodular".into()));
        }
        Ok(())
    }
}

pub(crate) fn require_rank2(a: &IntMatrix) -> Result<()> {
    match rank_exact(a) {
        2 => Ok(()),
        found => Err(Error::Rank { expected: "2", found }),
    }
}
