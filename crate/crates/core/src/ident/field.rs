use std::cmp::Ordering;

use crate::arith::print::fmt_ratfun;
use crate::arith::{poly_reduce_mod_basis, MPoly, Poly, RatFun, TermOrder};
use crate::elim::{io_equations, saturate, CharPresentation};
use crate::error::Result;
use crate::model::Model;

/// Generators over the rationals of a subfield of the parameter field.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldDescription {
    pub generators: Vec<RatFun>,
}

/// Sign-normalized coefficient, or `None` for constants.
pub fn canonical_coefficient(c: &RatFun) -> Option<RatFun> {
    if c.constant_value().is_some() {
        None
    } else {
        Some(c.sign_normalized())
    }
}

fn cmp_terms(a: &MPoly, b: &MPoly) -> Ordering {
    for (x, y) in a.terms().rev().zip(b.terms().rev()) {
        match y.0.cmp(x.0).then_with(|| x.1.cmp(y.1)) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    a.len().cmp(&b.len())
}

/// Simpler generators first: total degree, then size, then terms in
/// decreasing graded-lex order.
fn cmp_generators(a: &RatFun, b: &RatFun) -> Ordering {
    let deg = |r: &RatFun| r.num().total_degree() + r.den().total_degree();
    let size = |r: &RatFun| r.num().len() + r.den().len();
    deg(a)
        .cmp(&deg(b))
        .then_with(|| size(a).cmp(&size(b)))
        .then_with(|| cmp_terms(a.num(), b.num()))
        .then_with(|| cmp_terms(a.den(), b.den()))
}

impl FieldDescription {
    /// Canonical generating set of the field generated by `coeffs`:
    /// constants dropped, signs normalized, sorted, and any generator
    /// already in the field of the earlier ones removed.
    pub fn from_coefficients(coeffs: impl IntoIterator<Item = RatFun>) -> Self {
        let mut all: Vec<RatFun> = coeffs.into_iter().filter_map(|c| canonical_coefficient(&c)).collect();
        all.sort_by(cmp_generators);
        all.dedup();
        let mut kept = FieldDescription::default();
        for c in all {
            if !field_membership(&c, &kept) {
                kept.generators.push(c);
            }
        }
        kept
    }

    pub fn strings(&self, params: &[String]) -> Vec<String> {
        self.generators.iter().map(|g| fmt_ratfun(g, params)).collect()
    }
}

pub fn field_of_presentation(c: &CharPresentation) -> FieldDescription {
    FieldDescription::from_coefficients(crate::elim::coefficients(c))
}

/// Field generated by the coefficients of the verified IO presentation,
/// computed with the default ranking and depth.
pub fn io_identifiable_field(m: &Model) -> Result<FieldDescription> {
    let ring = m.diff_ring();
    let c = io_equations(m, &ring.default_ranking(), m.n())?;
    Ok(field_of_presentation(&c))
}

/// Copies of the parameters as polynomial variables `1..`, over the
/// parameter field as coefficients; variable 0 is left for the tag.
fn lift(p: &MPoly) -> Poly<RatFun> {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        out.add_term(m.remap(|i| i + 1), RatFun::constant(c.clone()));
    }
    out
}

/// Exact test of `h ∈ Q(gens)`: `h` is in the field iff `num(h)(z) -
/// h·den(h)(z)` lies in the ideal of the points `z` with `g(z) = g` for all
/// generators.
pub fn field_membership(h: &RatFun, gens: &FieldDescription) -> bool {
    if h.constant_value().is_some() {
        return true;
    }
    if gens.generators.is_empty() {
        return false;
    }
    let mut ideal = Vec::new();
    let mut dens = Poly::one();
    for g in &gens.generators {
        ideal.push(lift(g.num()).sub(&lift(g.den()).scale(g)));
        dens = dens.mul(&lift(g.den()));
    }
    let order = TermOrder::GRevLex;
    let basis = saturate(&ideal, &dens, &order);
    let target = lift(h.num()).sub(&lift(h.den()).scale(h));
    poly_reduce_mod_basis(&target, &basis, &order).is_zero()
}
