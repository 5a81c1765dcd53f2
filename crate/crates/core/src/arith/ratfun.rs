//! Rational functions over the rationals, kept in lowest terms.
//!
//! Invariants: numerator and denominator are coprime, the denominator is
//! nonzero with graded-lex leading coefficient 1, and zero is `0/1`.

use std::ops;

use super::field::{Field, Rat};
use super::gcd::poly_gcd;
use super::poly::MPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl RatFun {
    /// Canonical fraction `num / den`.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Division("rational function with zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFun {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(index: usize) -> Self {
        Self::from_poly(MPoly::var(index))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value, when the function is a rational constant.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.num.max_var().max(self.den.max_var())
    }

    pub fn has_var(&self, index: usize) -> bool {
        self.num.has_var(index) || self.den.has_var(index)
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RatFun {
                num,
                den: MPoly::one(),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides numerator"),
                    den.exact_div(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let s = lc.inv();
            RatFun {
                num: num.scale(&s),
                den: den.scale(&s),
            }
        }
    }

    /// Evaluates at a rational point; `None` when the denominator vanishes.
    pub fn eval(&self, point: &[Rat]) -> Option<Rat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point).div(&d))
    }

    pub fn remap_vars(&self, map: impl Fn(usize) -> usize) -> Self {
        // An injective renaming keeps the fraction reduced; only the
        // leading-coefficient normalization may move.
        Self::reduce(self.num.remap_vars(&map), self.den.remap_vars(&map))
    }

    /// Partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Self {
        let n = self
            .num
            .derivative(index)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(index)));
        Self::reduce(n, self.den.mul(&self.den))
    }

    /// The same function with the sign flipped if needed so the numerator's
    /// leading coefficient is positive.
    pub fn sign_normalized(&self) -> Self {
        match self.num.leading_coeff() {
            Some(c) if super::field::is_negative(c) => Field::neg(self),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        RatFun {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }
}

impl Field for RatFun {
    fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::reduce(num, self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::reduce(num, self.den.mul(&rhs.den))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&Field::neg(rhs))
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        // Cross-cancel before multiplying so the result needs no further gcd.
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let den = d1.mul(&d2);
        let lc = den.leading_coeff().expect("nonzero").inv();
        RatFun {
            num: n1.mul(&n2).scale(&lc),
            den: den.scale(&lc),
        }
    }

    fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of the zero rational function");
        Self::reduce(self.den.clone(), self.num.clone())
    }

    fn from_int(n: i64) -> Self {
        Self::from_poly(MPoly::from_int(n))
    }

    fn from_rat(q: &Rat) -> Self {
        Self::constant(q.clone())
    }

    fn as_rat(&self) -> Option<Rat> {
        self.constant_value()
    }
}

/// `num / den` on raw polynomials; see [`RatFun::new`].
pub fn ratfun_simplify(num: &MPoly, den: &MPoly) -> Result<RatFun> {
    RatFun::new(num.clone(), den.clone())
}

macro_rules! forward_field_op {
    ($trait:ident, $method:ident) => {
        impl ops::$trait<&RatFun> for &RatFun {
            type Output = RatFun;
            fn $method(self, rhs: &RatFun) -> RatFun {
                Field::$method(self, rhs)
            }
        }
    };
}

forward_field_op!(Add, add);
forward_field_op!(Sub, sub);
forward_field_op!(Mul, mul);
forward_field_op!(Div, div);

impl ops::Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        Field::neg(self)
    }
}
