use std::cmp::Ordering;

use crate::arith::{Field, Monomial, RatFun};
use crate::error::{Error, Result};

use super::{compare_poly_rank, differentiate_n, leader_data, DiffPoly, LeaderData, Ranking};

/// Sparse pseudo-division of `f` by `g` in variable `v`.
///
/// Returns `(multiplier, quotient, remainder)` with
/// `multiplier * f = quotient * g + remainder` and `deg_v remainder < deg_v g`.
/// The multiplier is a power of the leading coefficient of `g` in `v`, or 1
/// when that coefficient is a constant of the field.
pub fn pseudo_divide(f: &DiffPoly, g: &DiffPoly, v: usize) -> (DiffPoly, DiffPoly, DiffPoly) {
    let dg = g.degree_in(v);
    let lcg = g.coeff_of_power(v, dg);
    let mut r = f.clone();
    let mut q = DiffPoly::zero();
    if let Some(c) = lcg.constant_value() {
        let inv = c.inv();
        while !r.is_zero() && r.has_var(v) && r.degree_in(v) >= dg {
            let dr = r.degree_in(v);
            let t = r
                .coeff_of_power(v, dr)
                .mul_term(&Monomial::var(v, dr - dg), &inv);
            r = r.sub(&t.mul(g));
            q = q.add(&t);
        }
        return (DiffPoly::one(), q, r);
    }
    let mut mult = DiffPoly::one();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let t = r
            .coeff_of_power(v, dr)
            .mul_term(&Monomial::var(v, dr - dg), &RatFun::one());
        r = lcg.mul(&r).sub(&t.mul(g));
        q = lcg.mul(&q).add(&t);
        mult = mult.mul(&lcg);
    }
    (mult, q, r)
}

/// Autoreduced set, elements sorted by increasing rank.
#[derive(Clone, Debug)]
pub struct AutoreducedSet {
    elements: Vec<DiffPoly>,
    data: Vec<LeaderData>,
    ranking: Ranking,
}

impl AutoreducedSet {
    /// Sorts `elements` by rank and checks they are pairwise reduced.
    pub fn new(elements: Vec<DiffPoly>, ranking: &Ranking) -> Result<Self> {
        let mut pairs = elements
            .into_iter()
            .map(|e| Ok((leader_data(&e, ranking)?, e)))
            .collect::<Result<Vec<_>>>()?;
        pairs.sort_by(|a, b| compare_poly_rank(&a.0, &b.0, ranking));
        let (data, elements): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        for (i, e) in elements.iter().enumerate() {
            for (j, d) in data.iter().enumerate() {
                if i != j && !is_reduced(e, d, ranking.nbases()) {
                    return Err(Error::NotAutoreduced);
                }
            }
        }
        Ok(AutoreducedSet {
            elements,
            data,
            ranking: ranking.clone(),
        })
    }

    pub fn elements(&self) -> &[DiffPoly] {
        &self.elements
    }

    pub fn leader_data(&self) -> &[LeaderData] {
        &self.data
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Checks every pair of `set` for reducedness.
pub fn is_autoreduced(set: &[DiffPoly], r: &Ranking) -> Result<bool> {
    let data = set.iter().map(|f| leader_data(f, r)).collect::<Result<Vec<_>>>()?;
    for (i, f) in set.iter().enumerate() {
        for (j, d) in data.iter().enumerate() {
            if i != j && !is_reduced(f, d, r.nbases()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// No proper derivative of `g`'s leader occurs in `f`, and `f` has lower
/// degree than `g` in that leader.
pub fn is_reduced(f: &DiffPoly, g: &LeaderData, nbases: usize) -> bool {
    f.vars().into_iter().all(|i| {
        let v = super::ring::decode(i, nbases);
        if i == g.index {
            f.degree_in(i) < g.degree
        } else {
            !v.is_proper_derivative_of(g.lead)
        }
    })
}

/// Orders autoreduced sets: the first differing rank decides; a set that
/// extends the other ranks lower.
pub fn compare_autoreduced(a: &AutoreducedSet, b: &AutoreducedSet) -> Ordering {
    for (x, y) in a.data.iter().zip(&b.data) {
        match compare_poly_rank(x, y, &a.ranking) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    b.len().cmp(&a.len())
}

/// One step `next = multiplier * previous - quotient * δ^order(A[element])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub multiplier: DiffPoly,
    pub quotient: DiffPoly,
    pub element: usize,
    pub order: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RittCertificate {
    pub steps: Vec<ReductionStep>,
}

impl RittCertificate {
    /// Product `h` of all step multipliers (initials and separants).
    pub fn multiplier(&self) -> DiffPoly {
        self.steps.iter().fold(DiffPoly::one(), |h, s| h.mul(&s.multiplier))
    }

    /// The combination `Σ` with `h·f − remainder = Σ`.
    pub fn combination(&self, set: &AutoreducedSet) -> DiffPoly {
        let nb = set.ranking.nbases();
        let mut sum = DiffPoly::zero();
        for s in &self.steps {
            let d = differentiate_n(&set.elements[s.element], s.order, nb);
            sum = sum.mul(&s.multiplier).add(&s.quotient.mul(&d));
        }
        sum
    }

    /// Expands `h·f − remainder − Σ` and tests it for zero.
    pub fn verify(&self, f: &DiffPoly, remainder: &DiffPoly, set: &AutoreducedSet) -> bool {
        self.multiplier()
            .mul(f)
            .sub(remainder)
            .sub(&self.combination(set))
            .is_zero()
    }
}

/// Ritt reduction: partial reduction of proper derivatives of leaders
/// (highest first, separants as multipliers), then algebraic
/// pseudo-division by the elements in decreasing rank (initials as
/// multipliers).
pub fn ritt_reduce(f: &DiffPoly, set: &AutoreducedSet) -> (DiffPoly, RittCertificate) {
    let r = &set.ranking;
    let nb = r.nbases();
    let mut cert = RittCertificate::default();
    let mut cur = f.clone();
    loop {
        let target = cur
            .vars()
            .into_iter()
            .filter_map(|i| {
                let v = super::ring::decode(i, nb);
                set.data
                    .iter()
                    .position(|d| v.is_proper_derivative_of(d.lead))
                    .map(|e| (i, v, e))
            })
            .max_by_key(|&(i, _, _)| r.key_of_index(i));
        let Some((i, v, e)) = target else { break };
        let k = v.order - set.data[e].lead.order;
        let d = differentiate_n(&set.elements[e], k, nb);
        let (m, q, rem) = pseudo_divide(&cur, &d, i);
        cert.steps.push(ReductionStep {
            multiplier: m,
            quotient: q,
            element: e,
            order: k,
        });
        cur = rem;
    }
    for e in (0..set.len()).rev() {
        let d = &set.data[e];
        if cur.degree_in(d.index) >= d.degree {
            let (m, q, rem) = pseudo_divide(&cur, &set.elements[e], d.index);
            cert.steps.push(ReductionStep {
                multiplier: m,
                quotient: q,
                element: e,
                order: 0,
            });
            cur = rem;
        }
    }
    (cur, cert)
}
