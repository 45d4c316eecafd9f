//! Exact integer coefficients: `i64` until an operation overflows, then
//! arbitrary precision.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Small(i64),
    Big(BigInt),
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::Small(0)
    }
}

impl From<i64> for Coeff {
    fn from(x: i64) -> Self {
        Coeff::Small(x)
    }
}

impl From<BigInt> for Coeff {
    fn from(x: BigInt) -> Self {
        Coeff::Big(x).normalized()
    }
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Small(0)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Small(x) => *x == 0,
            Coeff::Big(x) => x.is_zero(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Small(x) => *x < 0,
            Coeff::Big(x) => x.is_negative(),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Coeff::Small(x) => BigInt::from(*x),
            Coeff::Big(x) => x.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coeff::Small(x) => Some(*x),
            Coeff::Big(x) => x.to_i64(),
        }
    }

    fn normalized(self) -> Self {
        match self {
            Coeff::Big(x) => match x.to_i64() {
                Some(s) => Coeff::Small(s),
                None => Coeff::Big(x),
            },
            s => s,
        }
    }

    /// `self += a * b` for a small factor `b`.
    pub fn add_mul_small(&mut self, a: &Coeff, b: i64) {
        match (&mut *self, a) {
            (Coeff::Small(x), Coeff::Small(y)) => {
                if let Some(v) = y.checked_mul(b).and_then(|p| x.checked_add(p)) {
                    *x = v;
                    return;
                }
            }
            (Coeff::Big(x), _) => {
                *x += a.to_big() * b;
                let taken = std::mem::take(x);
                *self = Coeff::Big(taken).normalized();
                return;
            }
            _ => {}
        }
        *self = Coeff::Big(self.to_big() + a.to_big() * b).normalized();
    }

    pub fn add_assign(&mut self, a: &Coeff) {
        self.add_mul_small(a, 1);
    }

    pub fn sub_assign(&mut self, a: &Coeff) {
        self.add_mul_small(a, -1);
    }

    pub fn mul_small(&self, b: i64) -> Coeff {
        let mut out = Coeff::zero();
        out.add_mul_small(self, b);
        out
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => match a.checked_mul(*b) {
                Some(x) => Coeff::Small(x),
                None => Coeff::from(BigInt::from(*a) * b),
            },
            _ => Coeff::from(self.to_big() * other.to_big()),
        }
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: i64) -> Coeff {
        assert!(d != 0, "division by zero");
        match self {
            Coeff::Small(x) => {
                assert!(x % d == 0, "inexact division {x} / {d}");
                Coeff::Small(x / d)
            }
            Coeff::Big(x) => {
                let d = BigInt::from(d);
                assert!((x % &d).is_zero(), "inexact division");
                Coeff::Big(x / d).normalized()
            }
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Small(x) => *x == 1,
            Coeff::Big(x) => x.is_one(),
        }
    }

    /// `Some(e)` when the value is `2^e`.
    pub fn log2_exact(&self) -> Option<u32> {
        match self {
            Coeff::Small(x) if *x > 0 && (*x & (*x - 1)) == 0 => Some(x.trailing_zeros()),
            Coeff::Big(x) if x.is_positive() => {
                let bits = x.bits();
                (x == &(BigInt::one() << (bits - 1))).then(|| (bits - 1) as u32)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(x) => write!(f, "{x}"),
            Coeff::Big(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Coeff::Small(x) => s.serialize_i64(*x),
            Coeff::Big(x) => s.serialize_str(&x.to_string()),
        }
    }
}

impl PartialEq<i64> for Coeff {
    fn eq(&self, other: &i64) -> bool {
        self.to_i64() == Some(*other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow() {
        let mut c = Coeff::from(i64::MAX);
        c.add_assign(&Coeff::from(1));
        assert!(matches!(c, Coeff::Big(_)));
        c.sub_assign(&Coeff::from(1));
        assert_eq!(c, Coeff::Small(i64::MAX));
        let big = Coeff::from(i64::MAX).mul_small(4);
        assert_eq!(big.div_exact(4), Coeff::Small(i64::MAX));
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(Coeff::from(8).log2_exact(), Some(3));
        assert_eq!(Coeff::from(1).log2_exact(), Some(0));
        assert_eq!(Coeff::from(6).log2_exact(), None);
        assert_eq!(Coeff::from(0).log2_exact(), None);
        assert_eq!(Coeff::from(BigInt::one() << 70).log2_exact(), Some(70));
    }
}
