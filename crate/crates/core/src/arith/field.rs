use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number. `BigRational` keeps numerator and denominator
/// coprime with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficient field of a sparse polynomial.
///
/// Method names deliberately mirror the arithmetic operators; generic code
/// calls them through this trait only.
pub trait Field: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
    fn from_int(n: i64) -> Self;
    /// Embeds a rational constant.
    fn from_rat(q: &Rat) -> Self;
    /// The value as a rational constant, when it is one.
    fn as_rat(&self) -> Option<Rat>;
}

impl Field for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn is_one(&self) -> bool {
        <Rat as One>::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn from_int(n: i64) -> Self {
        rat(n)
    }
    fn from_rat(q: &Rat) -> Self {
        q.clone()
    }
    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

/// Least common multiple of the denominators of `values`.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Gcd of the numerators of `values` (zero for an empty or all-zero list).
pub fn numerator_gcd<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

pub fn is_negative(q: &Rat) -> bool {
    q.is_negative()
}
