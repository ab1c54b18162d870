//! Arbitrary-precision integers with an inline machine-word fast path.
//!
//! Almost every entry that shows up in lattice computations fits in an
//! `i64`, so values are stored inline and only promoted to a heap-allocated
//! [`BigInt`] when an operation overflows. The representation is canonical:
//! a value that fits in `i64` is always stored as `Small`, which makes the
//! derived `Eq` and `Hash` agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Int(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    #[inline]
    pub const fn zero() -> Int {
        Int(Repr::Small(0))
    }

    #[inline]
    pub const fn one() -> Int {
        Int(Repr::Small(1))
    }

    #[inline]
    pub const fn from_i64(v: i64) -> Int {
        Int(Repr::Small(v))
    }

    pub fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int(Repr::Small(v)),
            None => Int(Repr::Big(Box::new(b))),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => (**b).clone(),
        }
    }

    #[inline]
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    /// `true` for ±1.
    #[inline]
    pub fn is_unit(&self) -> bool {
        matches!(self.0, Repr::Small(1) | Repr::Small(-1))
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    #[inline]
    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_big().abs().cmp(&other.to_big().abs()),
        }
    }

    /// Floor division. Panics on a zero divisor.
    pub fn div_floor(&self, d: &Int) -> Int {
        assert!(!d.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &d.0) {
            if !(*a == i64::MIN && *b == -1) {
                return Int::from_i64(Integer::div_floor(a, b));
            }
        }
        Int::from_big(Integer::div_floor(&self.to_big(), &d.to_big()))
    }

    /// Remainder with the sign of the divisor (pairs with [`Int::div_floor`]).
    pub fn mod_floor(&self, d: &Int) -> Int {
        assert!(!d.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &d.0) {
            if *b != -1 {
                return Int::from_i64(Integer::mod_floor(a, b));
            }
            return Int::zero();
        }
        Int::from_big(Integer::mod_floor(&self.to_big(), &d.to_big()))
    }

    /// Quotient `q` with `|self - q d| <= |d| / 2`.
    pub fn div_round(&self, d: &Int) -> Int {
        let q = self.div_floor(d);
        let r = self - &(&q * d);
        // r has the sign of d; one more step of d flips it and shrinks it
        let twice = &r + &r;
        if twice.cmp_abs(d) == Ordering::Greater {
            q + Int::one()
        } else {
            q
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Int) -> Option<Int> {
        if d.is_zero() {
            return if self.is_zero() { Some(Int::zero()) } else { None };
        }
        if self.mod_floor(d).is_zero() {
            Some(self.div_floor(d))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            other.is_zero()
        } else {
            other.mod_floor(self).is_zero()
        }
    }

    /// Nonnegative gcd.
    pub fn gcd(&self, other: &Int) -> Int {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                let g = Integer::gcd(&(*a as i128), &(*b as i128));
                match i64::try_from(g) {
                    Ok(v) => Int::from_i64(v),
                    Err(_) => Int::from_big(BigInt::from(g)),
                }
            }
            _ => Int::from_big(Integer::gcd(&self.to_big(), &other.to_big())),
        }
    }

    pub fn lcm(&self, other: &Int) -> Int {
        if self.is_zero() || other.is_zero() {
            return Int::zero();
        }
        (self * other).abs().div_floor(&self.gcd(other))
    }

    /// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
    pub fn xgcd(a: &Int, b: &Int) -> (Int, Int, Int) {
        let e = a.to_big().extended_gcd(&b.to_big());
        let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            x = -x;
            y = -y;
        }
        (Int::from_big(g), Int::from_big(x), Int::from_big(y))
    }

    /// `self += a * b`.
    #[inline]
    pub fn add_mul(&mut self, a: &Int, b: &Int) {
        if let (Repr::Small(s), Repr::Small(x), Repr::Small(y)) = (&mut self.0, &a.0, &b.0) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(v) = s.checked_add(p) {
                    *s = v;
                    return;
                }
            }
        }
        *self = Int::from_big(self.to_big() + a.to_big() * b.to_big());
    }

    /// `self -= a * b`.
    #[inline]
    pub fn sub_mul(&mut self, a: &Int, b: &Int) {
        if let (Repr::Small(s), Repr::Small(x), Repr::Small(y)) = (&mut self.0, &a.0, &b.0) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(v) = s.checked_sub(p) {
                    *s = v;
                    return;
                }
            }
        }
        *self = Int::from_big(self.to_big() - a.to_big() * b.to_big());
    }

    pub fn pow(&self, e: u32) -> Int {
        let mut acc = Int::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::zero()
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Int {
            fn from(v: $t) -> Int { Int::from_i64(v as i64) }
        }
    )*};
}
from_prim!(i8, i16, i32, i64, u8, u16, u32);

impl From<usize> for Int {
    fn from(v: usize) -> Int {
        match i64::try_from(v) {
            Ok(x) => Int::from_i64(x),
            Err(_) => Int::from_big(BigInt::from(v)),
        }
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Int {
        match i64::try_from(v) {
            Ok(x) => Int::from_i64(x),
            Err(_) => Int::from_big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_big(b)
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::zero()
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::one()
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<i64> for Int {
    fn eq(&self, other: &i64) -> bool {
        matches!(self.0, Repr::Small(v) if v == *other)
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    fn add(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_add(*b) {
                return Int::from_i64(v);
            }
        }
        Int::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    fn sub(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_sub(*b) {
                return Int::from_i64(v);
            }
        }
        Int::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    fn mul(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_mul(*b) {
                return Int::from_i64(v);
            }
        }
        Int::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Int::from_i64(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Int> for Int {
            type Output = Int;
            fn $m(self, rhs: Int) -> Int {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Int> for Int {
            type Output = Int;
            fn $m(self, rhs: &'a Int) -> Int {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Int> for &'a Int {
            type Output = Int;
            fn $m(self, rhs: Int) -> Int {
                self.$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<'a> AddAssign<&'a Int> for Int {
    fn add_assign(&mut self, rhs: &'a Int) {
        if let (Repr::Small(a), Repr::Small(b)) = (&mut self.0, &rhs.0) {
            if let Some(v) = a.checked_add(*b) {
                *a = v;
                return;
            }
        }
        *self = &*self + rhs;
    }
}

impl AddAssign<Int> for Int {
    fn add_assign(&mut self, rhs: Int) {
        *self += &rhs;
    }
}

impl<'a> SubAssign<&'a Int> for Int {
    fn sub_assign(&mut self, rhs: &'a Int) {
        if let (Repr::Small(a), Repr::Small(b)) = (&mut self.0, &rhs.0) {
            if let Some(v) = a.checked_sub(*b) {
                *a = v;
                return;
            }
        }
        *self = &*self - rhs;
    }
}

impl SubAssign<Int> for Int {
    fn sub_assign(&mut self, rhs: Int) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        let mut acc = Int::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigInt::from_str(s).map(Int::from_big)
    }
}

/// Serialized as a decimal string so values of any size survive JSON.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Int::from_str(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Int::from(i64::MAX);
        let s = &big + &Int::one();
        assert_eq!(s.to_string(), "9223372036854775808");
        assert!(s.to_i64().is_none());
        let back = &s - &Int::one();
        assert_eq!(back, big);
        assert_eq!(back.to_i64(), Some(i64::MAX));
    }

    #[test]
    fn floor_division() {
        let a = Int::from(-7);
        let b = Int::from(2);
        assert_eq!(a.div_floor(&b), Int::from(-4));
        assert_eq!(a.mod_floor(&b), Int::from(1));
        assert_eq!(Int::from(i64::MIN).div_floor(&Int::from(-1)).to_string(), "9223372036854775808");
        assert_eq!(Int::from(7).div_round(&Int::from(4)), Int::from(2));
        assert_eq!(Int::from(5).div_round(&Int::from(4)), Int::from(1));
        assert_eq!(Int::from(31).div_round(&Int::from(-12)), Int::from(-3));
        assert_eq!(Int::from(-32).div_round(&Int::from(-12)), Int::from(3));
        assert_eq!(Int::from(7).div_round(&Int::from(-4)), Int::from(-2));
    }

    #[test]
    fn add_mul_fast_and_slow() {
        let mut x = Int::from(5);
        x.add_mul(&Int::from(3), &Int::from(4));
        assert_eq!(x, Int::from(17));
        let mut y = Int::from(i64::MAX);
        y.add_mul(&Int::from(2), &Int::from(2));
        assert_eq!(y.to_string(), "9223372036854775811");
        y.sub_mul(&Int::from(2), &Int::from(2));
        assert_eq!(y, Int::from(i64::MAX));
    }

    #[test]
    fn gcd_and_xgcd() {
        let (g, x, y) = Int::xgcd(&Int::from(240), &Int::from(46));
        assert_eq!(g, Int::from(2));
        assert_eq!(&(&Int::from(240) * &x) + &(&Int::from(46) * &y), g);
        assert_eq!(Int::from(-12).gcd(&Int::from(18)), Int::from(6));
        assert_eq!(Int::from(4).lcm(&Int::from(6)), Int::from(12));
    }
}
