//! Exact integer coefficients with a machine-word fast path.
//!
//! Lattice reductions in Hermite normal form can inflate intermediate
//! entries well past `i64`, while the overwhelming majority of
//! coefficients stay tiny. [`Coef`] keeps an `i64` until an operation
//! would overflow and only then promotes to a heap [`BigInt`]; results
//! that fit are demoted back so equality and ordering stay canonical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coef {
    Small(i64),
    Big(Box<BigInt>),
}

impl Coef {
    pub const ZERO: Coef = Coef::Small(0);
    pub const ONE: Coef = Coef::Small(1);

    fn from_big(b: BigInt) -> Coef {
        match b.to_i64() {
            Some(v) => Coef::Small(v),
            None => Coef::Big(Box::new(b)),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Coef::Small(v) => BigInt::from(*v),
            Coef::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coef::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coef::Small(1))
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            Coef::Small(v) => v.signum() as i32,
            Coef::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Coef {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn neg(&self) -> Coef {
        match self {
            Coef::Small(v) => match v.checked_neg() {
                Some(w) => Coef::Small(w),
                None => Coef::from_big(-BigInt::from(*v)),
            },
            Coef::Big(b) => Coef::from_big(-(**b).clone()),
        }
    }

    pub fn add(&self, other: &Coef) -> Coef {
        if let (Coef::Small(x), Coef::Small(y)) = (self, other) {
            if let Some(z) = x.checked_add(*y) {
                return Coef::Small(z);
            }
        }
        Coef::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Coef) -> Coef {
        if let (Coef::Small(x), Coef::Small(y)) = (self, other) {
            if let Some(z) = x.checked_sub(*y) {
                return Coef::Small(z);
            }
        }
        Coef::from_big(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Coef) -> Coef {
        if let (Coef::Small(x), Coef::Small(y)) = (self, other) {
            if let Some(z) = x.checked_mul(*y) {
                return Coef::Small(z);
            }
        }
        Coef::from_big(self.to_big() * other.to_big())
    }

    pub fn mul_i64(&self, other: i64) -> Coef {
        self.mul(&Coef::Small(other))
    }

    /// Floor division with remainder: `self = q * other + r`, `0 <= r < |other|`
    /// when `other > 0`. Panics on division by zero.
    pub fn div_mod_floor(&self, other: &Coef) -> (Coef, Coef) {
        assert!(!other.is_zero(), "division by zero");
        if let (Coef::Small(x), Coef::Small(y)) = (self, other) {
            if *x != i64::MIN || *y != -1 {
                let (q, r) = x.div_mod_floor(y);
                return (Coef::Small(q), Coef::Small(r));
            }
        }
        let (q, r) = self.to_big().div_mod_floor(&other.to_big());
        (Coef::from_big(q), Coef::from_big(r))
    }

    /// Exact division; panics if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Coef) -> Coef {
        let (q, r) = self.div_mod_floor(other);
        assert!(r.is_zero(), "inexact division");
        q
    }

    /// Extended gcd: returns `(g, u, v)` with `g = u*self + v*other`, `g >= 0`.
    pub fn egcd(&self, other: &Coef) -> (Coef, Coef, Coef) {
        let (g, u, v) = egcd_big(self.to_big(), other.to_big());
        (Coef::from_big(g), Coef::from_big(u), Coef::from_big(v))
    }

    pub fn gcd(&self, other: &Coef) -> Coef {
        if let (Coef::Small(x), Coef::Small(y)) = (self, other) {
            if *x != i64::MIN && *y != i64::MIN {
                return Coef::Small(x.abs().gcd(&y.abs()));
            }
        }
        Coef::from_big(self.to_big().gcd(&other.to_big()))
    }

    /// Machine-word value when available.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Coef::Small(v) => Some(*v),
            Coef::Big(_) => None,
        }
    }
}

fn egcd_big(x: BigInt, y: BigInt) -> (BigInt, BigInt, BigInt) {
    if y.is_zero() {
        if x.is_negative() {
            return (-x, BigInt::from(-1), BigInt::zero());
        }
        return (x, BigInt::from(1), BigInt::zero());
    }
    let (q, r) = x.div_mod_floor(&y);
    let (g, u, v) = egcd_big(y, r);
    let w = &u - &q * &v;
    (g, v, w)
}

impl From<i64> for Coef {
    fn from(v: i64) -> Coef {
        Coef::Small(v)
    }
}

impl From<BigInt> for Coef {
    fn from(b: BigInt) -> Coef {
        Coef::from_big(b)
    }
}

impl PartialOrd for Coef {
    fn partial_cmp(&self, other: &Coef) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coef {
    fn cmp(&self, other: &Coef) -> Ordering {
        match (self, other) {
            (Coef::Small(x), Coef::Small(y)) => x.cmp(y),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Small(v) => write!(f, "{v}"),
            Coef::Big(b) => write!(f, "{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic() {
        let a = Coef::from(6);
        let b = Coef::from(-4);
        assert_eq!(a.add(&b), Coef::from(2));
        assert_eq!(a.mul(&b), Coef::from(-24));
        assert_eq!(a.sub(&b), Coef::from(10));
        assert_eq!(b.neg(), Coef::from(4));
        assert_eq!(b.abs(), Coef::from(4));
        assert_eq!(b.signum(), -1);
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Coef::from(i64::MAX).add(&Coef::ONE);
        assert!(matches!(big, Coef::Big(_)));
        let back = big.sub(&Coef::ONE);
        assert_eq!(back, Coef::from(i64::MAX));
        assert!(matches!(back, Coef::Small(_)));
        let sq = Coef::from(i64::MAX).mul(&Coef::from(i64::MAX));
        assert_eq!(sq.div_exact(&Coef::from(i64::MAX)), Coef::from(i64::MAX));
    }

    #[test]
    fn floor_division() {
        let (q, r) = Coef::from(-7).div_mod_floor(&Coef::from(3));
        assert_eq!((q, r), (Coef::from(-3), Coef::from(2)));
        let (q, r) = Coef::from(7).div_mod_floor(&Coef::from(3));
        assert_eq!((q, r), (Coef::from(2), Coef::from(1)));
    }

    #[test]
    fn egcd_identity() {
        for (x, y) in [(12i64, 18), (-12, 18), (0, 5), (5, 0), (-3, -7)] {
            let (g, u, v) = Coef::from(x).egcd(&Coef::from(y));
            assert!(g.signum() >= 0);
            let lhs = u.mul(&Coef::from(x)).add(&v.mul(&Coef::from(y)));
            assert_eq!(lhs, g, "egcd({x},{y})");
            assert_eq!(g, Coef::from(x).gcd(&Coef::from(y)));
        }
    }

    #[test]
    fn ordering_across_reprs() {
        let big = Coef::from(i64::MAX).add(&Coef::ONE);
        assert!(Coef::from(i64::MAX) < big);
        assert_eq!(big.neg(), Coef::from(i64::MIN));
        assert!(big.add(&Coef::ONE).neg() < Coef::from(i64::MIN));
    }
}
