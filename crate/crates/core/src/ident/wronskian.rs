use crate::arith::{Field, RatFun};
use crate::diff::DiffPoly;
use crate::elim::CharPresentation;
use crate::model::Model;
use crate::series::{default_order, determinant, not_in_ideal, wronskian, Membership};

use super::field::canonical_coefficient;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    IdentifiableByWronskian,
    /// No subset worked; this does not mean the coefficient is unidentifiable.
    NoCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskianWitness {
    /// Index of the presentation element.
    pub element: usize,
    /// Monomials whose Wronskian determinant is not in the ideal.
    pub subset: Vec<DiffPoly>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub coefficient: RatFun,
    pub status: CertificateStatus,
    pub witness: Option<WronskianWitness>,
}

/// `k`-subsets of `0..n` in co-lexicographic order.
pub fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

pub fn wronskian_certificates(c: &CharPresentation, m: &Model, trials: usize) -> Vec<Certificate> {
    wronskian_certificates_seeded(c, m, trials, 0)
}

/// One certificate per distinct non-constant coefficient, in order of
/// first appearance.
pub fn wronskian_certificates_seeded(c: &CharPresentation, m: &Model, trials: usize, seed: u64) -> Vec<Certificate> {
    let nb = m.diff_ring().nbases();
    let mut out: Vec<Certificate> = Vec::new();
    for (k, e) in c.elements.iter().enumerate() {
        let coeffs: Vec<RatFun> = e.terms().filter_map(|(_, a)| canonical_coefficient(a)).collect();
        if coeffs.is_empty() {
            continue;
        }
        let mut monos: Vec<_> = e.terms().map(|(mono, _)| mono.clone()).collect();
        monos.sort_by(|a, b| c.ranking.cmp_monomials(a, b));
        let z: Vec<DiffPoly> = monos.into_iter().map(|mono| DiffPoly::term(mono, RatFun::one())).collect();
        let witness = if z.len() < 2 {
            None
        } else {
            colex_subsets(z.len(), z.len() - 1).into_iter().find_map(|subset| {
                let cols: Vec<DiffPoly> = subset.iter().map(|&i| z[i].clone()).collect();
                let det = determinant(&wronskian(&cols, cols.len(), nb));
                if det.is_zero() {
                    return None;
                }
                match not_in_ideal(&det, m, trials.max(1), default_order(&det, nb), seed) {
                    Ok(Membership::NotInIdeal { seed }) => Some(WronskianWitness {
                        element: k,
                        subset: cols,
                        seed,
                    }),
                    _ => None,
                }
            })
        };
        for a in coeffs {
            let status = if witness.is_some() {
                CertificateStatus::IdentifiableByWronskian
            } else {
                CertificateStatus::NoCertificate
            };
            match out.iter_mut().find(|x| x.coefficient == a) {
                Some(prev) => {
                    if prev.witness.is_none() && witness.is_some() {
                        prev.status = status;
                        prev.witness = witness.clone();
                    }
                }
                None => out.push(Certificate {
                    coefficient: a,
                    status,
                    witness: witness.clone(),
                }),
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_order() {
        assert_eq!(colex_subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(colex_subsets(4, 2)[2], vec![1, 2]);
        assert_eq!(colex_subsets(2, 1), vec![vec![0], vec![1]]);
        assert!(colex_subsets(1, 2).is_empty());
    }
}
