//! Scalar number theory on arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
///
/// The coefficients come from the classical Euclidean recurrence run on
/// `|a|, |b|`, with signs folded back in afterwards, so the output is a
/// deterministic function of the input.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut old_r, mut r) = (a.abs(), b.abs());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if a.is_negative() {
        old_s = -old_s;
    }
    if b.is_negative() {
        old_t = -old_t;
    }
    Ok((old_r, old_s, old_t))
}

/// Entry gcd of a vector (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the entry gcd, keeping the direction of the ray.
pub fn primitive(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = content(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    Integer::div_floor(a, b)
}

pub fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -Integer::div_floor(&-a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn vec_of(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn gcd_cases() {
        assert_eq!(gcd(&bi(12), &bi(18)), bi(6));
        assert_eq!(gcd(&bi(0), &bi(0)), bi(0));
        assert_eq!(gcd(&bi(5), &bi(-3)), bi(1));
        assert_eq!(gcd(&bi(-4), &bi(0)), bi(4));
    }

    #[test]
    fn ext_gcd_worked_relation() {
        // 5*(-1) + (-3)*(-2) = 1
        let (g, x, y) = ext_gcd(&bi(5), &bi(-3)).unwrap();
        assert_eq!((g, x, y), (bi(1), bi(-1), bi(-2)));
    }

    #[test]
    fn ext_gcd_identity_and_even() {
        assert_eq!(ext_gcd(&bi(1), &bi(0)).unwrap(), (bi(1), bi(1), bi(0)));
        let (g, x, y) = ext_gcd(&bi(6), &bi(4)).unwrap();
        assert_eq!(g, bi(2));
        assert_eq!(bi(6) * x + bi(4) * y, bi(2));
        assert_eq!(ext_gcd(&bi(0), &bi(0)), Err(Error::ZeroGcd));
    }

    #[test]
    fn primitive_cases() {
        assert_eq!(primitive(&vec_of(&[3, 6, 9, 6, 3])).unwrap(), vec_of(&[1, 2, 3, 2, 1]));
        assert_eq!(primitive(&vec_of(&[1, 0])).unwrap(), vec_of(&[1, 0]));
        let p = primitive(&vec_of(&[-4, -6])).unwrap();
        assert_eq!(p, vec_of(&[-2, -3]));
        assert_eq!(content(&p), bi(1));
        assert_eq!(primitive(&vec_of(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn rounding_division() {
        assert_eq!(floor_div(&bi(-7), &bi(2)), bi(-4));
        assert_eq!(ceil_div(&bi(-7), &bi(2)), bi(-3));
        assert_eq!(ceil_div(&bi(7), &bi(2)), bi(4));
        assert_eq!(ceil_div(&bi(7), &bi(-2)), bi(-3));
    }

    proptest::proptest! {
        #[test]
        fn bezout_identity_holds(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            proptest::prop_assume!(a != 0 || b != 0);
            let (g, x, y) = ext_gcd(&bi(a), &bi(b)).unwrap();
            proptest::prop_assert_eq!(bi(a) * x + bi(b) * y, g.clone());
            proptest::prop_assert_eq!(g, gcd(&bi(a), &bi(b)));
        }

        #[test]
        fn primitive_divides_exactly(v in proptest::collection::vec(-500i64..500, 1..6)) {
            proptest::prop_assume!(v.iter().any(|&x| x != 0));
            let v = vec_of(&v);
            let p = primitive(&v).unwrap();
            proptest::prop_assert_eq!(content(&p), bi(1));
            let k = content(&v);
            proptest::prop_assert!(k.is_positive());
            for (vi, pi) in v.iter().zip(&p) {
                proptest::prop_assert_eq!(vi, &(&k * pi));
            }
        }
    }
}
