//! Buchberger's algorithm with the product and chain criteria and the
//! normal selection strategy.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::arith::{Field, Monomial, OrdPoly, Poly, TermOrder};

/// Reduced Gröbner basis of the ideal generated by `gens`, each element
/// monic, sorted by increasing leading monomial.
pub fn groebner<C: Field>(gens: &[Poly<C>], order: &TermOrder) -> Vec<Poly<C>> {
    groebner_ord(gens.iter().map(|g| OrdPoly::from_poly(g, order)).collect(), order)
        .into_iter()
        .map(|g| g.to_poly())
        .collect()
}

pub(crate) fn groebner_ord<C: Field>(gens: Vec<OrdPoly<C>>, order: &TermOrder) -> Vec<OrdPoly<C>> {
    let mut basis: Vec<OrdPoly<C>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let r = g.reduce(&basis, order);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.iter().any(|g| g.lm().is_one()) {
        return vec![unit()];
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while let Some(pair) = select(&pending, &basis, order) {
        pending.remove(&pair);
        let (i, j) = pair;
        let (mi, mj) = (basis[i].lm().clone(), basis[j].lm().clone());
        if mi.is_coprime(&mj) {
            continue;
        }
        let lcm = mi.lcm(&mj);
        if chain_criterion(i, j, &lcm, &basis, &pending) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], &lcm, order);
        let r = s.reduce(&basis, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.lm().is_one() {
            return vec![unit()];
        }
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            pending.insert((i, k));
        }
    }
    reduce_basis(basis, order)
}

fn unit<C: Field>() -> OrdPoly<C> {
    OrdPoly::from_poly(&Poly::one(), &TermOrder::Lex)
}

fn select(pending: &BTreeSet<(usize, usize)>, basis: &[OrdPoly<impl Field>], order: &TermOrder) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), Monomial)> = None;
    for &(i, j) in pending {
        let l = basis[i].lm().lcm(basis[j].lm());
        let better = match &best {
            None => true,
            Some((_, b)) => order.cmp(&l, b) == Ordering::Less,
        };
        if better {
            best = Some(((i, j), l));
        }
    }
    best.map(|(p, _)| p)
}

fn chain_criterion<C: Field>(
    i: usize,
    j: usize,
    lcm: &Monomial,
    basis: &[OrdPoly<C>],
    pending: &BTreeSet<(usize, usize)>,
) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && basis[k].lm().divides(lcm)
            && !pending.contains(&key(i, k))
            && !pending.contains(&key(j, k))
    })
}

pub(crate) fn s_polynomial<C: Field>(f: &OrdPoly<C>, g: &OrdPoly<C>, lcm: &Monomial, order: &TermOrder) -> OrdPoly<C> {
    let uf = lcm.div(f.lm()).expect("lcm");
    let ug = lcm.div(g.lm()).expect("lcm");
    let left = OrdPoly::zero().sub_mul(&f.lc().inv().neg(), &uf, f, order);
    left.sub_mul(&g.lc().inv(), &ug, g, order)
}

/// Drops elements with a redundant leading monomial, then fully
/// inter-reduces and sorts.
fn reduce_basis<C: Field>(basis: Vec<OrdPoly<C>>, order: &TermOrder) -> Vec<OrdPoly<C>> {
    let mut minimal: Vec<OrdPoly<C>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            l != k && h.lm().divides(g.lm()) && (h.lm() != g.lm() || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<OrdPoly<C>> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<OrdPoly<C>> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &minimal[k];
        let tail = g.tail().reduce(&others, order);
        out.push(OrdPoly::with_lead(g.terms()[0].clone(), tail));
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out
}

/// Whether every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner<C: Field>(basis: &[Poly<C>], order: &TermOrder) -> bool {
    let ob: Vec<OrdPoly<C>> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| OrdPoly::from_poly(g, order))
        .collect();
    for j in 0..ob.len() {
        for i in 0..j {
            let lcm = ob[i].lm().lcm(ob[j].lm());
            if !s_polynomial(&ob[i], &ob[j], &lcm, order).reduce(&ob, order).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Generators of `⟨gens⟩ : s^∞`, computed by adjoining `t·s − 1` for a fresh
/// variable `t` ordered above everything and eliminating it. Returns the
/// reduced basis under `order`.
pub fn saturate<C: Field>(gens: &[Poly<C>], s: &Poly<C>, order: &TermOrder) -> Vec<Poly<C>> {
    assert!(!s.is_zero(), "saturation by zero");
    let shift = |p: &Poly<C>| p.remap_vars(|i| i + 1);
    let mut shifted: Vec<Poly<C>> = gens.iter().map(shift).collect();
    let tag = Poly::<C>::var(0);
    shifted.push(tag.mul(&shift(s)).sub(&Poly::one()));
    let big = order.with_leading_block(1);
    groebner(&shifted, &big)
        .into_iter()
        .filter(|g| !g.has_var(0))
        .map(|g| g.remap_vars(|i| i - 1))
        .collect()
}
