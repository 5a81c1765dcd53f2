//! Sparse multivariate polynomials over an arbitrary coefficient field.
//!
//! Variables are plain indices; naming lives with whoever owns the ring
//! (see [`crate::arith::VarList`]). Terms are kept in a `BTreeMap` keyed by
//! [`Monomial`], so iteration is in ascending graded lexicographic order and
//! the representation is canonical.

use std::collections::{BTreeMap, BTreeSet};
use std::ops;

use super::field::{Field, Rat};
use super::monomial::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

/// Polynomial with exact rational coefficients.
pub type MPoly = Poly<Rat>;

impl<C: Field> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Field> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }

    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index, 1), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Coefficient if the polynomial is a (possibly zero) constant.
    pub fn constant_value(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Greatest term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|m| m.support().map(|(i, _)| i))
            .collect()
    }

    pub fn has_var(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exp(index) > 0)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(index)).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, d)| (k.mul(m), d.mul(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Scales so the graded lexicographic leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    /// Exact quotient `self / divisor`; fails when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (lm, lc) = divisor
            .leading_term()
            .ok_or_else(|| Error::Division("division by the zero polynomial".into()))?;
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.div(lm) else {
                return Err(Error::Division("divisor does not divide the dividend".into()));
            };
            let qc = c.mul(&lc_inv);
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(index);
            if e > 0 {
                out.add_term(m.with_exp(index, e - 1), c.mul(&C::from_int(e as i64)));
            }
        }
        out
    }

    /// Groups terms by the exponent of `index`; the variable is removed
    /// from the returned coefficients.
    pub fn coefficients_in(&self, index: usize) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(index);
            out.entry(e)
                .or_default()
                .add_term(m.with_exp(index, 0), c.clone());
        }
        out
    }

    /// Coefficient of `var^k`, with `var` removed.
    pub fn coeff_of_power(&self, index: usize, k: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exp(index) == k)
                .map(|(m, c)| (m.with_exp(index, 0), c.clone())),
        )
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn remap_vars(&self, map: impl Fn(usize) -> usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.remap(&map), c.clone())))
    }

    /// Substitutes every variable by a field value; unassigned variables
    /// (beyond `values.len()`) must not occur.
    pub fn eval(&self, values: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.support() {
                let v = &values[i];
                for _ in 0..e {
                    t = t.mul(v);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Replaces variable `index` by `value`.
    pub fn substitute(&self, index: usize, value: &Self) -> Self {
        let mut out = Self::zero();
        let mut powers: Vec<Self> = vec![Self::one()];
        for (e, coeff) in self.coefficients_in(index) {
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            out = out.add(&coeff.mul(&powers[e as usize]));
        }
        out
    }
}

impl MPoly {
    /// Scales to integer coefficients with content one and positive leading coefficient.
    pub fn integer_normalized(&self) -> MPoly {
        use super::field::{denominator_lcm, numerator_gcd};
        use num_traits::Signed;
        if self.is_zero() {
            return self.clone();
        }
        let l = denominator_lcm(self.terms.values());
        let scaled = self.scale(&Rat::from_integer(l));
        let g = numerator_gcd(scaled.terms.values());
        let mut factor = Rat::new(1.into(), g.abs());
        if scaled.leading_coeff().is_some_and(|c| c.is_negative()) {
            factor = -factor;
        }
        scaled.scale(&factor)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<C: Field> ops::$trait<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                Poly::$method(self, rhs)
            }
        }
        impl<C: Field> ops::$trait<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                Poly::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<C: Field> ops::Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(self)
    }
}

impl<C: Field> ops::Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;

    fn x() -> MPoly {
        MPoly::var(0)
    }
    fn y() -> MPoly {
        MPoly::var(1)
    }

    #[test]
    fn add_cancels() {
        let p = &x() - &MPoly::one();
        assert_eq!(&p + &MPoly::one(), x());
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(p, &x().pow(2) - &y().pow(2));
    }

    #[test]
    fn exact_division() {
        let p = &x().pow(2) - &y().pow(2);
        assert_eq!(p.exact_div(&(&x() - &y())).unwrap(), &x() + &y());
        assert!(matches!(p.exact_div(&(&x() + &MPoly::one())), Err(Error::Division(_))));
        assert!(matches!(p.exact_div(&MPoly::zero()), Err(Error::Division(_))));
    }

    #[test]
    fn derivative_and_coefficients() {
        let p = &(&x().pow(3) * &y()) + &x().scale(&rat(5));
        assert_eq!(p.derivative(0), &(&x().pow(2) * &y()).scale(&rat(3)) + &MPoly::from_int(5));
        let c = p.coefficients_in(0);
        assert_eq!(c[&3], y());
        assert_eq!(c[&1], MPoly::from_int(5));
        assert_eq!(p.degree_in(0), 3);
    }

    #[test]
    fn substitution() {
        let p = &x().pow(2) + &y();
        let q = p.substitute(0, &(&y() + &MPoly::one()));
        assert_eq!(q, &(&y().pow(2) + &y().scale(&rat(3))) + &MPoly::one());
    }

    #[test]
    fn integer_normalization() {
        let p = &x().scale(&crate::arith::field::ratio(-1, 2)) + &y().scale(&crate::arith::field::ratio(3, 4));
        assert_eq!(p.integer_normalized(), &x().scale(&rat(2)) - &y().scale(&rat(3)));
    }
}
