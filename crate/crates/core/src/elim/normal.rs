//! Removing factors free of the leaders and making elements monic.
//!
//! Polynomial coefficients over the parameters are flattened into a single
//! ring: parameter `i` keeps index `i`, derivative variable `d` moves to
//! `nparams + d`.

use std::collections::{BTreeMap, BTreeSet};

use super::groebner::saturate;
use crate::arith::{poly_gcd, poly_lcm, Field, MPoly, Monomial, Poly, RatFun, Rat, TermOrder};
use crate::diff::{leader_data, normalize_monic, DiffPoly, DiffRing, Ranking};
use crate::error::{Error, Result};

fn split(m: &Monomial, at: usize) -> (Monomial, Monomial) {
    let e = m.exps();
    let cut = at.min(e.len());
    (
        Monomial::from_exps(e[..cut].to_vec()),
        Monomial::from_exps(e[cut..].to_vec()),
    )
}

fn denominator_lcm(coeffs: impl Iterator<Item = RatFun>) -> MPoly {
    coeffs.fold(MPoly::one(), |l, c| poly_lcm(&l, c.den()))
}

/// Clears the coefficient denominators and flattens.
fn flatten(f: &DiffPoly, nparams: usize) -> MPoly {
    let l = denominator_lcm(f.terms().map(|(_, c)| c.clone()));
    let mut out = MPoly::zero();
    for (m, c) in f.terms() {
        let scaled = c.num().mul(&l.exact_div(c.den()).expect("lcm divides"));
        let shifted = m.remap(|i| i + nparams);
        out = out.add(&scaled.mul_term(&shifted, &Rat::one()));
    }
    out
}

fn unflatten(p: &MPoly, nparams: usize) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for (m, c) in p.terms() {
        let (params, vars) = split(m, nparams);
        out.add_term(vars, RatFun::from_poly(MPoly::term(params, c.clone())));
    }
    out
}

/// Gcd of the coefficients of the flattened `p` seen as a polynomial in the
/// variables listed in `leaders` (flattened indices).
pub(crate) fn content_outside(p: &MPoly, leaders: &BTreeSet<usize>) -> MPoly {
    let mut groups: BTreeMap<Monomial, MPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let lead = Monomial::from_exps(
            (0..m.exps().len())
                .map(|i| if leaders.contains(&i) { m.exp(i) } else { 0 })
                .collect(),
        );
        let rest = m.div(&lead).expect("sub-monomial");
        groups.entry(lead).or_insert_with(MPoly::zero).add_term(rest, c.clone());
    }
    let mut g = MPoly::zero();
    for q in groups.values() {
        g = poly_gcd(&g, q);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Largest factor of `e` (over the parameters and non-leading variables)
/// after clearing denominators, flattened; constant when there is none.
pub fn nonleading_content(e: &DiffPoly, leaders: &BTreeSet<usize>, nparams: usize) -> MPoly {
    let flat_leaders = leaders.iter().map(|l| l + nparams).collect();
    content_outside(&flatten(e, nparams), &flat_leaders)
}

fn strip_content(p: &MPoly, leaders: &BTreeSet<usize>, nparams: usize) -> MPoly {
    let flat_leaders = leaders.iter().map(|l| l + nparams).collect();
    let g = content_outside(p, &flat_leaders);
    if g.is_constant() {
        p.clone()
    } else {
        p.exact_div(&g).expect("content divides")
    }
}

/// Canonical form of a new chain element `f` on top of `lower`: factors
/// free of the leaders are removed and the result is made monic. When the
/// initial of `f` involves lower leaders, `f` is first replaced by the
/// element with main variable its leader in the reduced lex basis of the
/// chain over the field of non-leading quantities, saturated at that initial.
pub fn normalize_element(f: &DiffPoly, lower: &[DiffPoly], ring: &DiffRing, r: &Ranking) -> Result<DiffPoly> {
    let nparams = ring.params().len();
    let data = leader_data(f, r)?;
    let mut leaders: BTreeSet<usize> = BTreeSet::new();
    for g in lower {
        leaders.insert(leader_data(g, r)?.index);
    }
    leaders.insert(data.index);

    let flat = if data.init.vars().iter().all(|v| !leaders.contains(v)) {
        flatten(f, nparams)
    } else {
        triangular_element(f, &data.init, lower, &leaders, nparams, r)?
    };
    let out = unflatten(&strip_content(&flat, &leaders, nparams), nparams);
    normalize_monic(&out, r)
}

fn triangular_element(
    f: &DiffPoly,
    init: &DiffPoly,
    lower: &[DiffPoly],
    leaders: &BTreeSet<usize>,
    nparams: usize,
    r: &Ranking,
) -> Result<MPoly> {
    // Basis variable k is the k-th leader by decreasing rank, so `f`'s own
    // leader is variable 0.
    let mut order: Vec<usize> = leaders.iter().copied().collect();
    order.sort_by_key(|&d| std::cmp::Reverse(r.key_of_index(d)));
    let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(k, &d)| (d, k)).collect();

    let to_basis = |g: &DiffPoly| -> Poly<RatFun> {
        let mut out = Poly::zero();
        for (m, c) in g.terms() {
            let mut lead = Vec::new();
            let mut rest = Vec::new();
            for (i, e) in m.support() {
                match pos.get(&i) {
                    Some(&k) => lead.push((k, e)),
                    None => rest.push((i + nparams, e)),
                }
            }
            let lm = lead
                .into_iter()
                .fold(Monomial::one(), |acc, (k, e)| acc.mul(&Monomial::var(k, e)));
            let rm = rest
                .into_iter()
                .fold(Monomial::one(), |acc, (k, e)| acc.mul(&Monomial::var(k, e)));
            let coeff = c.mul(&RatFun::from_poly(MPoly::term(rm, Rat::one())));
            out.add_term(lm, coeff);
        }
        out
    };

    let mut gens: Vec<Poly<RatFun>> = lower.iter().map(&to_basis).collect();
    gens.push(to_basis(f));
    let basis = saturate(&gens, &to_basis(init), &TermOrder::Lex);
    let main = basis
        .iter()
        .filter(|g| g.has_var(0))
        .min_by_key(|g| g.degree_in(0))
        .ok_or(Error::ZeroPolynomial)?;

    let l = denominator_lcm(main.terms().map(|(_, c)| c.clone()));
    let mut out = MPoly::zero();
    for (m, c) in main.terms() {
        let scaled = c.num().mul(&l.exact_div(c.den()).expect("lcm divides"));
        let back = m.remap(|k| order[k] + nparams);
        out = out.add(&scaled.mul_term(&back, &Rat::one()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::fmt_diffpoly;
    use crate::model::parse_diffpoly;

    fn ring() -> DiffRing {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        DiffRing::new(&s(&["a"]), &s(&[]), &s(&["y1", "y2"]), &s(&[]))
    }

    #[test]
    fn strips_parameter_and_variable_factors() {
        let ring = ring();
        let r = ring.default_ranking();
        let f = parse_diffpoly("2*a*y2*y1' - 4*a*y2*y1", &ring).unwrap();
        let e = normalize_element(&f, &[], &ring, &r).unwrap();
        assert_eq!(fmt_diffpoly(&e, &ring, &r), "y1' - 2*y1");
    }

    #[test]
    fn initial_involving_a_lower_leader() {
        let ring = ring();
        let r = ring.default_ranking();
        let lower = parse_diffpoly("y2^2 - a", &ring).unwrap();
        let f = parse_diffpoly("y2*y1' - y1", &ring).unwrap();
        let e = normalize_element(&f, &[lower], &ring, &r).unwrap();
        assert_eq!(fmt_diffpoly(&e, &ring, &r), "y1' - 1/a*y1*y2");
    }
}
