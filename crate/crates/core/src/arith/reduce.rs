//! Polynomials with terms kept sorted under an explicit [`TermOrder`], and
//! multivariate division by a list of such polynomials.

use std::cmp::Ordering;

use super::field::Field;
use super::monomial::Monomial;
use super::order::TermOrder;
use super::poly::Poly;

/// Terms in strictly decreasing order; the order itself is passed to every
/// operation that needs it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdPoly<C> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Field> OrdPoly<C> {
    pub fn zero() -> Self {
        OrdPoly { terms: Vec::new() }
    }

    pub fn from_poly(p: &Poly<C>, order: &TermOrder) -> Self {
        let mut terms: Vec<(Monomial, C)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OrdPoly { terms }
    }

    pub fn to_poly(&self) -> Poly<C> {
        Poly::from_terms(self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Everything but the leading term.
    pub fn tail(&self) -> Self {
        OrdPoly {
            terms: self.terms[1..].to_vec(),
        }
    }

    /// Puts `lead` in front of `tail`, whose terms must all be smaller.
    pub fn with_lead(lead: (Monomial, C), tail: Self) -> Self {
        let mut terms = Vec::with_capacity(tail.terms.len() + 1);
        terms.push(lead);
        terms.extend(tail.terms);
        OrdPoly { terms }
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &C {
        &self.terms[0].1
    }

    pub fn monic(mut self) -> Self {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.inv();
                for t in &mut self.terms {
                    t.1 = t.1.mul(&inv);
                }
            }
        }
        self
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        OrdPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// `self[start..] - c * m * g`, merged in order.
    fn sub_scaled_from(&self, start: usize, c: &C, m: &Monomial, g: &Self, order: &TermOrder) -> Vec<(Monomial, C)> {
        let a = &self.terms[start..];
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < a.len() || j < g.terms.len() {
            if j == g.terms.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let gm = g.terms[j].0.mul(m);
            if i == a.len() {
                out.push((gm, g.terms[j].1.mul(c).neg()));
                j += 1;
                continue;
            }
            match order.cmp(&a[i].0, &gm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gm, g.terms[j].1.mul(c).neg()));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = a[i].1.sub(&g.terms[j].1.mul(c));
                    if !v.is_zero() {
                        out.push((gm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// `self - c * m * g`.
    pub fn sub_mul(&self, c: &C, m: &Monomial, g: &Self, order: &TermOrder) -> Self {
        OrdPoly {
            terms: self.sub_scaled_from(0, c, m, g, order),
        }
    }

    pub fn sub(&self, g: &Self, order: &TermOrder) -> Self {
        self.sub_mul(&C::one(), &Monomial::one(), g, order)
    }

    /// Full normal form modulo `basis`: no term of the result is divisible
    /// by a leading monomial of the basis. Zero basis elements are ignored.
    pub fn reduce(&self, basis: &[Self], order: &TermOrder) -> Self {
        let basis: Vec<&Self> = basis.iter().filter(|g| !g.is_zero()).collect();
        let mut rem: Vec<(Monomial, C)> = Vec::new();
        let mut p = self.terms.clone();
        let mut start = 0;
        while start < p.len() {
            let (m, c) = &p[start];
            let divisor = basis.iter().find(|g| g.lm().divides(m));
            match divisor {
                Some(g) => {
                    let q = m.div(g.lm()).expect("divisible");
                    let k = c.div(g.lc());
                    // The head cancels exactly; drop it before merging.
                    let mut next = Vec::new();
                    let tail = OrdPoly {
                        terms: p[start + 1..].to_vec(),
                    };
                    let g_tail = OrdPoly {
                        terms: g.terms[1..].to_vec(),
                    };
                    next.extend(tail.sub_scaled_from(0, &k, &q, &g_tail, order));
                    p = next;
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        OrdPoly { terms: rem }
    }
}

/// Normal form of `f` modulo `basis` under `order`.
pub fn poly_reduce_mod_basis<C: Field>(f: &Poly<C>, basis: &[Poly<C>], order: &TermOrder) -> Poly<C> {
    let ob: Vec<OrdPoly<C>> = basis.iter().map(|g| OrdPoly::from_poly(g, order)).collect();
    OrdPoly::from_poly(f, order).reduce(&ob, order).to_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::MPoly;

    fn v(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn reduce_examples() {
        // x1 = var 0, y = var 1; lex x1 > y
        let g = vec![&v(0) - &v(1)];
        assert_eq!(poly_reduce_mod_basis(&v(0).pow(2), &g, &TermOrder::Lex), v(1).pow(2));
        assert_eq!(poly_reduce_mod_basis(&v(1), &g, &TermOrder::Lex), v(1));
        assert!(poly_reduce_mod_basis(&(&v(0) - &v(1)), &g, &TermOrder::Lex).is_zero());
    }

    #[test]
    fn remainder_has_no_reducible_terms() {
        let g = vec![&v(0).pow(2) - &v(1), &(&v(0) * &v(1)) - &MPoly::one()];
        let f = &(&v(0).pow(3) * &v(1)) + &v(0);
        let r = poly_reduce_mod_basis(&f, &g, &TermOrder::GrLex);
        let lms: Vec<Monomial> = g
            .iter()
            .map(|p| OrdPoly::from_poly(p, &TermOrder::GrLex).lm().clone())
            .collect();
        for (m, _) in r.terms() {
            assert!(lms.iter().all(|l| !l.divides(m)));
        }
    }
}
