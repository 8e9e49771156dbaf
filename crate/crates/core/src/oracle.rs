//! Brute-force reference decision for small canonical diagrams.
//!
//! In canonical coordinates every point and every useful generator lies in
//! the nonnegative quadrant, so a generator used with a positive coefficient
//! is componentwise below some data point. Pairs where one generator goes
//! unused are covered by allowing `a = b`. Enumerating all lattice points of
//! `K_A` under the componentwise maximum `M` is therefore exhaustive.

use crate::diagram::{canonical_diagram, CanonicalDiagram};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, PlanePoint};
use crate::solver::CandidatePair;

/// Largest coordinate the oracle accepts.
pub const COORD_CAP: i64 = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub rank2: bool,
    pub witness: Option<CandidatePair>,
    pub pairs_enumerated: u64,
}

type P = (i64, i64);

fn small(p: &PlanePoint) -> Result<P> {
    let conv = |v: &num_bigint::BigInt| -> Result<i64> {
        match i64::try_from(v) {
            Ok(x) if (0..=COORD_CAP).contains(&x) => Ok(x),
            _ => Err(Error::OracleCap { value: v.to_string(), cap: COORD_CAP }),
        }
    };
    Ok((conv(&p.x)?, conv(&p.y)?))
}

/// Is `r` a nonnegative integer multiple of the nonzero vector `b`?
fn multiple_of(r: P, b: P) -> bool {
    if r.0 * b.1 != r.1 * b.0 {
        return false;
    }
    let (num, den) = if b.0 != 0 { (r.0, b.0) } else { (r.1, b.1) };
    num % den == 0 && num / den >= 0
}

fn generated_small(p: P, a: P, b: P) -> bool {
    let kmax = [(p.0, a.0), (p.1, a.1)]
        .iter()
        .filter(|(_, ai)| *ai != 0)
        .map(|(pi, ai)| pi.div_euclid(*ai))
        .min()
        .unwrap_or(0);
    (0..=kmax.max(0)).any(|k| multiple_of((p.0 - k * a.0, p.1 - k * a.1), b))
}

/// Whether `p = k*a + l*b` for some nonnegative integers `k, l`.
///
/// Coordinates must be nonnegative and at most [`COORD_CAP`], and `a`, `b`
/// nonzero.
pub fn generated_by(p: &PlanePoint, a: &PlanePoint, b: &PlanePoint) -> Result<bool> {
    let (p, a, b) = (small(p)?, small(a)?, small(b)?);
    if a == (0, 0) || b == (0, 0) {
        return Err(Error::ZeroVector);
    }
    Ok(generated_small(p, a, b))
}

/// Exhausts every unordered pair `{a, b}` (including `a = b`) of nonzero
/// lattice points of `K_A` below the componentwise maximum of the points.
pub fn brute_force(cd: &CanonicalDiagram) -> Result<OracleVerdict> {
    let points = cd.diagram.points.iter().map(small).collect::<Result<Vec<P>>>()?;
    let c = small(cd.second_generator())?;
    let mx = points.iter().map(|p| p.0).max().unwrap_or(0);
    let my = points.iter().map(|p| p.1).max().unwrap_or(0);
    let mut cands = Vec::new();
    for x in 0..=mx {
        for y in 0..=my {
            // inside cone((1,0), c): y >= 0 and cross(p, c) >= 0
            if (x, y) != (0, 0) && x * c.1 - y * c.0 >= 0 {
                cands.push((x, y));
            }
        }
    }
    let mut enumerated = 0u64;
    for (i, &a) in cands.iter().enumerate() {
        for &b in &cands[i..] {
            enumerated += 1;
            if points.iter().all(|&p| generated_small(p, a, b)) {
                return Ok(OracleVerdict {
                    rank2: true,
                    witness: Some(CandidatePair { a: PlanePoint::new(a.0, a.1), b: PlanePoint::new(b.0, b.1) }),
                    pairs_enumerated: enumerated,
                });
            }
        }
    }
    Ok(OracleVerdict { rank2: false, witness: None, pairs_enumerated: enumerated })
}

/// Canonicalizes a rank-2 matrix (first extreme ray to `(1, 0)`) and runs
/// [`brute_force`].
pub fn brute_force_matrix(a: &IntMatrix) -> Result<OracleVerdict> {
    brute_force(&canonical_diagram(a, 1)?)
}
