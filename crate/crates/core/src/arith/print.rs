//! Canonical text for rationals, polynomials and rational functions.
//!
//! Output re-parses under the usual precedence (`^` over `*` `/` over `+`
//! `-`, left associative), which the expression parsers rely on.

use super::field::{is_negative, Field, Rat};
use super::poly::MPoly;
use super::ratfun::RatFun;

pub fn fmt_rat(q: &Rat) -> String {
    if q.denom() == &num_bigint::BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `name^e` factors joined by `*`; empty for the unit monomial.
pub fn fmt_factors<'a>(factors: impl IntoIterator<Item = (&'a str, u32)>) -> String {
    let parts: Vec<String> = factors
        .into_iter()
        .map(|(name, e)| if e == 1 { name.to_string() } else { format!("{name}^{e}") })
        .collect();
    parts.join("*")
}

/// A term ready for printing: sign, optional coefficient text (absent for a
/// unit coefficient) and monomial text (empty for the constant monomial).
pub struct TermText {
    pub negative: bool,
    pub coeff: Option<String>,
    pub monomial: String,
}

pub fn join_terms(terms: impl IntoIterator<Item = TermText>) -> String {
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        let body = match (t.coeff, t.monomial.is_empty()) {
            (None, true) => "1".to_string(),
            (Some(c), true) => c,
            (None, false) => t.monomial,
            (Some(c), false) => format!("{c}*{}", t.monomial),
        };
        match (i, t.negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Sign and magnitude text of a rational coefficient.
pub fn rat_coeff(c: &Rat) -> (bool, Option<String>) {
    let neg = is_negative(c);
    let a = if neg { Field::neg(c) } else { c.clone() };
    if a.is_one() {
        (neg, None)
    } else {
        (neg, Some(fmt_rat(&a)))
    }
}

/// Sign and magnitude text of a rational-function coefficient, bracketed
/// so it can be followed by `*monomial`.
pub fn ratfun_coeff(c: &RatFun, names: &[String]) -> (bool, Option<String>) {
    if let Some(q) = c.constant_value() {
        return rat_coeff(&q);
    }
    let neg = c.num().leading_coeff().is_some_and(is_negative);
    let a = if neg { Field::neg(c) } else { c.clone() };
    let text = if a.is_polynomial() && a.num().len() > 1 {
        format!("({})", fmt_mpoly(a.num(), names))
    } else {
        fmt_ratfun(&a, names)
    };
    (neg, Some(text))
}

fn var_name(names: &[String], i: usize) -> String {
    names.get(i).cloned().unwrap_or_else(|| format!("v{i}"))
}

/// Terms in descending graded-lex order, factors by ascending index.
pub fn fmt_mpoly(p: &MPoly, names: &[String]) -> String {
    join_terms(p.terms().rev().map(|(m, c)| {
        let (negative, coeff) = rat_coeff(c);
        let labels: Vec<(String, u32)> = m.support().map(|(i, e)| (var_name(names, i), e)).collect();
        TermText {
            negative,
            coeff,
            monomial: fmt_factors(labels.iter().map(|(n, e)| (n.as_str(), *e))),
        }
    }))
}

pub fn fmt_ratfun(r: &RatFun, names: &[String]) -> String {
    let num = fmt_mpoly(r.num(), names);
    if r.is_polynomial() {
        return num;
    }
    let num = if r.num().len() > 1 { format!("({num})") } else { num };
    let den = fmt_mpoly(r.den(), names);
    let bare_den = r.den().len() == 1 && {
        let (m, c) = r.den().leading_term().expect("nonzero");
        c.is_one() && m.support().count() == 1
    };
    if bare_den {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}
