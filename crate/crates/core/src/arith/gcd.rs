//! Multivariate gcd over the rationals by recursive primitive
//! pseudo-remainder sequences.
//!
//! The main variable is always the largest variable index present; contents
//! are taken over the remaining variables recursively. Every intermediate
//! primitive part is made monic, which keeps rational coefficient growth
//! in check for the small inputs this crate deals with.

use super::field::{Field, Rat};
use super::poly::MPoly;

/// Greatest common divisor, normalized to graded-lex leading coefficient 1.
/// `gcd(p, 0)` is `p` made monic; `gcd(0, 0)` is zero.
pub fn poly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a == b {
        return a.monic();
    }
    let (ma, a) = split_monomial(a);
    let (mb, b) = split_monomial(b);
    let mono = MPoly::term(ma.gcd(&mb), Rat::one());
    if a.is_constant() || b.is_constant() || certainly_coprime(&a, &b) {
        return mono;
    }
    mono.mul(&gcd_nonconstant(&a, &b)).monic()
}

/// `p = m * rest` with `m` the gcd of the monomials of `p`.
fn split_monomial(p: &MPoly) -> (super::Monomial, MPoly) {
    let mut terms = p.terms();
    let first = terms.next().expect("nonzero").0.clone();
    let m = terms.fold(first, |g, (t, _)| g.gcd(t));
    if m.is_one() {
        return (m, p.clone());
    }
    let rest = MPoly::from_terms(p.terms().map(|(t, c)| (t.div(&m).expect("divides"), c.clone())));
    (m, rest)
}

/// `a` with every variable except `v` replaced by a fixed small integer.
fn image_in(p: &MPoly, v: usize) -> MPoly {
    let point = |i: usize| Rat::from_integer(((i * 7 + 3) % 23 + 2).into());
    let mut out = MPoly::zero();
    for (m, c) in p.terms() {
        let mut k = c.clone();
        for (i, e) in m.support() {
            if i != v {
                k *= num_traits::pow::pow(point(i), e as usize);
            }
        }
        out.add_term(super::Monomial::var(v, m.exp(v)), k);
    }
    out
}

/// Sufficient test for a trivial gcd. The gcd only involves variables
/// common to both inputs; for each such `v`, if both leading coefficients
/// in `v` survive the evaluation of the other variables, the degree in `v`
/// of the gcd is at most that of the gcd of the univariate images.
fn certainly_coprime(a: &MPoly, b: &MPoly) -> bool {
    let (va, vb) = (a.vars(), b.vars());
    va.intersection(&vb).all(|&v| {
        let (ia, ib) = (image_in(a, v), image_in(b, v));
        ia.degree_in(v) == a.degree_in(v)
            && ib.degree_in(v) == b.degree_in(v)
            && gcd_nonconstant(&ia, &ib).degree_in(v) == 0
    })
}

/// Least common multiple, monic.
pub fn poly_lcm(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero();
    }
    let g = poly_gcd(a, b);
    a.mul(&b.exact_div(&g).expect("gcd divides its argument"))
        .monic()
}

fn gcd_nonconstant(a: &MPoly, b: &MPoly) -> MPoly {
    let v = a.max_var().max(b.max_var()).expect("non-constant input");
    if !a.has_var(v) {
        return gcd_with_content(a, b, v);
    }
    if !b.has_var(v) {
        return gcd_with_content(b, a, v);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let gc = poly_gcd(&ca, &cb);

    let (mut r0, mut r1) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = pseudo_remainder(&r0, &r1, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            r1 = MPoly::one();
            break;
        }
        r0 = r1;
        r1 = primitive_part(&r, v);
    }
    gc.mul(&primitive_part(&r1, v))
}

/// gcd of `a` (free of `v`) with `b`: only the coefficients of `b` in `v` matter.
fn gcd_with_content(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let mut g = a.monic();
    for c in b.coefficients_in(v).values() {
        if g.is_one() {
            break;
        }
        g = poly_gcd(&g, c);
    }
    g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content(p: &MPoly, v: usize) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coefficients_in(v).values() {
        g = poly_gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn primitive_part(p: &MPoly, v: usize) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    p.exact_div(&content(p, v)).expect("content divides").monic()
}

/// Sparse pseudo-remainder of `a` by `b` in variable `v`: repeatedly
/// cancels the top `v`-degree of `a` after multiplying by `lc_v(b)`.
pub fn pseudo_remainder(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let db = b.degree_in(v);
    let lcb = b.coeff_of_power(v, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.coeff_of_power(v, dr);
        let shift = MPoly::term(super::Monomial::var(v, dr - db), Rat::one());
        r = r.mul(&lcb).sub(&lcr.mul(&shift).mul(b));
    }
    r
}
