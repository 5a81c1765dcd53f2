//! Differential polynomials over Q(params): derivatives, rankings, Ritt
//! reduction and autoreduced sets.

mod ring;
mod ritt;

use std::cmp::Ordering;

use crate::arith::print::{join_terms, ratfun_coeff, TermText};
use crate::arith::{Field, Monomial, Poly, RatFun};
use crate::error::{Error, Result};

pub use ring::{compare_rank, DiffRing, DiffVar, RankKey, Ranking};
pub use ritt::{
    compare_autoreduced, is_autoreduced, is_reduced, pseudo_divide, ritt_reduce, AutoreducedSet, ReductionStep,
    RittCertificate,
};

/// Polynomial in derivative variables (indexed as in [`DiffRing`]) with
/// rational-function coefficients in the parameters.
pub type DiffPoly = Poly<RatFun>;

/// Leibniz-rule derivative; coefficients are constants.
pub fn differentiate(f: &DiffPoly, nbases: usize) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for (m, c) in f.terms() {
        for (i, e) in m.support() {
            let lowered = m.with_exp(i, e - 1);
            let shifted = lowered.mul(&Monomial::var(i + nbases, 1));
            out.add_term(shifted, c.mul(&RatFun::from_int(e as i64)));
        }
    }
    out
}

/// `δ^k f`.
pub fn differentiate_n(f: &DiffPoly, k: u32, nbases: usize) -> DiffPoly {
    let mut g = f.clone();
    for _ in 0..k {
        g = differentiate(&g, nbases);
    }
    g
}

/// Leader, initial, separant and degree of a non-constant polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaderData {
    pub lead: DiffVar,
    pub index: usize,
    pub init: DiffPoly,
    pub sep: DiffPoly,
    pub degree: u32,
}

impl LeaderData {
    pub fn rank(&self) -> (DiffVar, u32) {
        (self.lead, self.degree)
    }
}

/// Ranking-greatest variable index occurring in `f`.
pub fn leader_index(f: &DiffPoly, r: &Ranking) -> Option<usize> {
    f.vars().into_iter().max_by_key(|&i| r.key_of_index(i))
}

pub fn leader_data(f: &DiffPoly, r: &Ranking) -> Result<LeaderData> {
    let index = leader_index(f, r).ok_or(Error::ConstantPolynomial)?;
    let degree = f.degree_in(index);
    Ok(LeaderData {
        lead: ring::decode(index, r.nbases()),
        index,
        init: f.coeff_of_power(index, degree),
        sep: f.derivative(index),
        degree,
    })
}

/// Compares ranks `(leader, degree)`.
pub fn compare_poly_rank(a: &LeaderData, b: &LeaderData, r: &Ranking) -> Ordering {
    r.key_of_index(a.index)
        .cmp(&r.key_of_index(b.index))
        .then(a.degree.cmp(&b.degree))
}

/// Greatest monomial of `f` under the ranking-lexicographic order.
pub fn greatest_monomial<'a>(f: &'a DiffPoly, r: &Ranking) -> Option<(&'a Monomial, &'a RatFun)> {
    f.terms().max_by(|a, b| r.cmp_monomials(a.0, b.0))
}

/// Divides by the coefficient of the greatest monomial.
pub fn normalize_monic(f: &DiffPoly, r: &Ranking) -> Result<DiffPoly> {
    let (_, c) = greatest_monomial(f, r).ok_or(Error::ZeroPolynomial)?;
    if c.is_one() {
        return Ok(f.clone());
    }
    Ok(f.scale(&c.inv()))
}

/// Highest derivative order of any variable in `f` (0 for constants).
pub fn max_order(f: &DiffPoly, nbases: usize) -> u32 {
    f.vars().into_iter().map(|i| (i / nbases) as u32).max().unwrap_or(0)
}

/// Canonical text: terms in decreasing ranking-lexicographic order,
/// factors by derivative order then declaration index.
pub fn fmt_diffpoly(f: &DiffPoly, ring: &DiffRing, r: &Ranking) -> String {
    let mut terms: Vec<(&Monomial, &RatFun)> = f.terms().collect();
    terms.sort_by(|a, b| r.cmp_monomials(b.0, a.0));
    join_terms(terms.into_iter().map(|(m, c)| {
        let (negative, coeff) = ratfun_coeff(c, ring.params());
        let mut factors: Vec<(DiffVar, u32)> = m.support().map(|(i, e)| (ring.var_at(i), e)).collect();
        factors.sort_by_key(|(v, _)| (v.order, v.base));
        let names: Vec<(String, u32)> = factors.iter().map(|(v, e)| (ring.var_name(*v), *e)).collect();
        TermText {
            negative,
            coeff,
            monomial: crate::arith::print::fmt_factors(names.iter().map(|(n, e)| (n.as_str(), *e))),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{MPoly, Rat};

    pub(crate) fn hidden_rate_ring() -> DiffRing {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        DiffRing::new(&s(&["m1", "m2"]), &s(&["x1", "x2"]), &s(&["y"]), &[])
    }

    fn y(r: &DiffRing, k: u32) -> DiffPoly {
        r.var_poly(DiffVar::new(r.output(0), k))
    }

    fn param(i: usize) -> DiffPoly {
        DiffPoly::constant(RatFun::var(i))
    }

    /// y*y'' + m1*y'' - y'^2 + m2*y'
    pub(crate) fn hidden_rate_equation(r: &DiffRing) -> DiffPoly {
        let yy = &y(r, 0) * &y(r, 2);
        let t2 = &param(0) * &y(r, 2);
        let t3 = y(r, 1).pow(2);
        let t4 = &param(1) * &y(r, 1);
        &(&(&yy + &t2) - &t3) + &t4
    }

    #[test]
    fn leibniz_examples() {
        let r = hidden_rate_ring();
        let nb = r.nbases();
        let f = &y(&r, 0) * &y(&r, 2);
        let expected = &(&y(&r, 1) * &y(&r, 2)) + &(&y(&r, 0) * &y(&r, 3));
        assert_eq!(differentiate(&f, nb), expected);
        let sq = y(&r, 1).pow(2);
        assert_eq!(differentiate(&sq, nb), (&y(&r, 1) * &y(&r, 2)).scale(&RatFun::from_int(2)));
        let my = &param(0) * &y(&r, 0);
        assert_eq!(differentiate(&my, nb), &param(0) * &y(&r, 1));
    }

    #[test]
    fn leader_data_examples() {
        let r = hidden_rate_ring();
        let rk = r.default_ranking();
        let f = hidden_rate_equation(&r);
        let ld = leader_data(&f, &rk).unwrap();
        assert_eq!(ld.lead, DiffVar::new(r.output(0), 2));
        assert_eq!(ld.degree, 1);
        assert_eq!(ld.init, &y(&r, 0) + &param(0));
        assert_eq!(ld.sep, ld.init);

        let cube = y(&r, 1).pow(3);
        let ld = leader_data(&cube, &rk).unwrap();
        assert_eq!(ld.rank(), (DiffVar::new(r.output(0), 1), 3));
        assert!(ld.init.is_one());
        assert_eq!(ld.sep, y(&r, 1).pow(2).scale(&RatFun::from_int(3)));

        assert!(matches!(leader_data(&param(0), &rk), Err(Error::ConstantPolynomial)));
    }

    #[test]
    fn monic_normalization() {
        let r = hidden_rate_ring();
        let rk = r.default_ranking();
        let f = hidden_rate_equation(&r);
        assert_eq!(normalize_monic(&f, &rk).unwrap(), f);
        let scaled = f.scale(&RatFun::new(MPoly::from_int(3), MPoly::var(1)).unwrap());
        assert_eq!(normalize_monic(&scaled, &rk).unwrap(), f);
        let ab = &param(0) + &param(1);
        assert_eq!(normalize_monic(&(&ab * &y(&r, 0)), &rk).unwrap(), y(&r, 0));
        assert!(matches!(normalize_monic(&DiffPoly::zero(), &rk), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn canonical_text() {
        let r = hidden_rate_ring();
        let rk = r.default_ranking();
        assert_eq!(fmt_diffpoly(&hidden_rate_equation(&r), &r, &rk), "y*y'' + m1*y'' - y'^2 + m2*y'");
        let g = &y(&r, 4) - &y(&r, 0).scale(&RatFun::constant(Rat::new(3.into(), 2.into())));
        assert_eq!(fmt_diffpoly(&g, &r, &rk), "y^(4) - 3/2*y");
    }
}
