use std::cmp::Ordering;

use crate::arith::{Field, MPoly, Monomial, RatFun};
use crate::error::{Error, Result};

use super::DiffPoly;

/// A derivative `base^(order)` of one of the ring's differential indeterminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffVar {
    pub base: usize,
    pub order: u32,
}

impl DiffVar {
    pub fn new(base: usize, order: u32) -> Self {
        DiffVar { base, order }
    }

    pub fn derivative(self) -> Self {
        DiffVar::new(self.base, self.order + 1)
    }

    /// Whether `self` is `δ^k other` for some k ≥ 1.
    pub fn is_proper_derivative_of(self, other: DiffVar) -> bool {
        self.base == other.base && self.order > other.order
    }
}

/// K{x, y, u} with K = Q(params).
///
/// Differential indeterminates ("bases") are numbered states first, then
/// outputs, then inputs. A derivative variable has polynomial index
/// `order * nbases + base`, so differentiation shifts indices by `nbases`.
/// Coefficients are rational functions in the model ring whose first
/// `params.len()` variables are the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRing {
    params: Vec<String>,
    bases: Vec<String>,
    n_states: usize,
    n_outputs: usize,
    n_inputs: usize,
}

impl DiffRing {
    pub fn new(params: &[String], states: &[String], outputs: &[String], inputs: &[String]) -> Self {
        let bases = states.iter().chain(outputs).chain(inputs).cloned().collect();
        DiffRing {
            params: params.to_vec(),
            bases,
            n_states: states.len(),
            n_outputs: outputs.len(),
            n_inputs: inputs.len(),
        }
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn nbases(&self) -> usize {
        self.bases.len()
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn state(&self, i: usize) -> usize {
        i
    }

    pub fn output(&self, j: usize) -> usize {
        self.n_states + j
    }

    pub fn input(&self, l: usize) -> usize {
        self.n_states + self.n_outputs + l
    }

    pub fn is_state(&self, base: usize) -> bool {
        base < self.n_states
    }

    pub fn base_name(&self, base: usize) -> &str {
        &self.bases[base]
    }

    pub fn base_index(&self, name: &str) -> Option<usize> {
        self.bases.iter().position(|b| b == name)
    }

    pub fn index(&self, v: DiffVar) -> usize {
        v.order as usize * self.nbases() + v.base
    }

    pub fn var_at(&self, index: usize) -> DiffVar {
        decode(index, self.nbases())
    }

    pub fn check_var(&self, v: DiffVar) -> Result<()> {
        if v.base < self.nbases() {
            Ok(())
        } else {
            Err(Error::Arity(format!("differential indeterminate {} is not declared", v.base)))
        }
    }

    /// `y`, `y'`, `y''`, `y'''`, then `y^(4)`.
    pub fn var_name(&self, v: DiffVar) -> String {
        let b = self.base_name(v.base);
        match v.order {
            0..=3 => format!("{b}{}", "'".repeat(v.order as usize)),
            k => format!("{b}^({k})"),
        }
    }

    pub fn var_poly(&self, v: DiffVar) -> DiffPoly {
        DiffPoly::var(self.index(v))
    }

    /// Converts a polynomial over (params, states, inputs), the model ring,
    /// into an order-zero differential polynomial.
    pub fn from_model_poly(&self, p: &MPoly) -> DiffPoly {
        let np = self.params.len();
        let mut out = DiffPoly::zero();
        for (m, c) in p.terms() {
            let mut coeff = Vec::new();
            let mut diff = Vec::new();
            for (i, e) in m.support() {
                if i < np {
                    coeff.push((i, e));
                } else if i < np + self.n_states {
                    diff.push((self.state(i - np), e));
                } else {
                    diff.push((self.input(i - np - self.n_states), e));
                }
            }
            let cm = monomial_of(&coeff);
            let dm = monomial_of(&diff);
            out.add_term(dm, RatFun::from_poly(MPoly::term(cm, c.clone())));
        }
        out
    }

    /// Inverse of [`Self::from_model_poly`] for polynomials whose variables are
    /// order-zero states or inputs and whose coefficients are polynomial.
    pub fn to_model_poly(&self, f: &DiffPoly) -> Option<MPoly> {
        let np = self.params.len();
        let mut out = MPoly::zero();
        for (m, c) in f.terms() {
            if !c.is_polynomial() {
                return None;
            }
            let mut exps = Vec::new();
            for (i, e) in m.support() {
                let v = self.var_at(i);
                let slot = if v.order != 0 {
                    return None;
                } else if self.is_state(v.base) {
                    np + v.base
                } else if v.base >= self.n_states + self.n_outputs {
                    np + v.base - self.n_outputs
                } else {
                    return None;
                };
                exps.push((slot, e));
            }
            out = out.add(&c.num().mul(&MPoly::term(monomial_of(&exps), Field::one())));
        }
        Some(out)
    }

    /// Elimination ranking: states above outputs and inputs.
    pub fn default_ranking(&self) -> Ranking {
        let states = (0..self.n_states).collect();
        let rest = (self.n_states..self.nbases()).collect();
        Ranking::new(vec![states, rest], self.nbases()).expect("bases partitioned")
    }
}

fn monomial_of(pairs: &[(usize, u32)]) -> Monomial {
    let mut m = Monomial::one();
    for &(i, e) in pairs {
        m = m.mul(&Monomial::var(i, e));
    }
    m
}

pub(crate) fn decode(index: usize, nbases: usize) -> DiffVar {
    DiffVar::new(index % nbases, (index / nbases) as u32)
}

/// Block-elimination ranking, orderly inside each block: a higher block
/// wins, then the higher derivative order, then the earlier position in
/// the block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranking {
    blocks: Vec<Vec<usize>>,
    slots: Vec<Option<(usize, usize)>>,
    nbases: usize,
}

/// Larger keys rank higher.
pub type RankKey = (usize, u32, usize);

impl Ranking {
    /// `blocks` lists base indices, highest block first. A base may appear
    /// at most once; bases not listed are undeclared for this ranking.
    pub fn new(blocks: Vec<Vec<usize>>, nbases: usize) -> Result<Self> {
        let mut slots = vec![None; nbases];
        for (bi, block) in blocks.iter().enumerate() {
            for (pos, &b) in block.iter().enumerate() {
                if b >= nbases || slots[b].is_some() {
                    return Err(Error::Arity(format!("base {b} listed twice or out of range")));
                }
                slots[b] = Some((bi, pos));
            }
        }
        Ok(Ranking { blocks, slots, nbases })
    }

    /// One block: purely orderly.
    pub fn orderly(order: Vec<usize>, nbases: usize) -> Result<Self> {
        Self::new(vec![order], nbases)
    }

    pub fn nbases(&self) -> usize {
        self.nbases
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn key(&self, v: DiffVar) -> Result<RankKey> {
        let slot = self
            .slots
            .get(v.base)
            .copied()
            .flatten()
            .ok_or_else(|| Error::Arity(format!("base {} is not ranked", v.base)))?;
        let (bi, pos) = slot;
        Ok((self.blocks.len() - bi, v.order, self.blocks[bi].len() - pos))
    }

    /// Key of a polynomial variable index; panics on unranked bases.
    pub fn key_of_index(&self, index: usize) -> RankKey {
        self.key(decode(index, self.nbases)).expect("variable is ranked")
    }

    pub fn compare(&self, v: DiffVar, w: DiffVar) -> Result<Ordering> {
        Ok(self.key(v)?.cmp(&self.key(w)?))
    }

    /// Ranking-lexicographic order on differential monomials: exponents are
    /// compared variable by variable, highest-ranked variable first.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let ka = self.ranked_support(a);
        let kb = self.ranked_support(b);
        for (x, y) in ka.iter().zip(&kb) {
            match x.0.cmp(&y.0) {
                Ordering::Equal => match x.1.cmp(&y.1) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
                // the side holding the higher variable is larger
                ord => return ord,
            }
        }
        ka.len().cmp(&kb.len())
    }

    fn ranked_support(&self, m: &Monomial) -> Vec<(RankKey, u32)> {
        let mut v: Vec<(RankKey, u32)> = m.support().map(|(i, e)| (self.key_of_index(i), e)).collect();
        v.sort_by_key(|x| std::cmp::Reverse(x.0));
        v
    }
}

/// Free-function form of [`Ranking::compare`].
pub fn compare_rank(r: &Ranking, v: DiffVar, w: DiffVar) -> Result<Ordering> {
    r.compare(v, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> DiffRing {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        DiffRing::new(&s(&["a"]), &s(&["x"]), &s(&["y1", "y2"]), &s(&["u"]))
    }

    #[test]
    fn elimination_and_order_rules() {
        let r = ring();
        let rk = r.default_ranking();
        let x1 = DiffVar::new(r.state(0), 1);
        let y5 = DiffVar::new(r.output(0), 5);
        assert_eq!(compare_rank(&rk, x1, y5).unwrap(), Ordering::Greater);
        let y2 = DiffVar::new(r.output(0), 2);
        let y1 = DiffVar::new(r.output(0), 1);
        assert_eq!(compare_rank(&rk, y2, y1).unwrap(), Ordering::Greater);
        assert_eq!(compare_rank(&rk, y1, y1).unwrap(), Ordering::Equal);
    }

    #[test]
    fn declared_index_breaks_ties() {
        let r = ring();
        let rk = r.default_ranking();
        let a = DiffVar::new(r.output(0), 1);
        let b = DiffVar::new(r.output(1), 1);
        let u = DiffVar::new(r.input(0), 1);
        assert_eq!(rk.compare(a, b).unwrap(), Ordering::Greater);
        assert_eq!(rk.compare(b, u).unwrap(), Ordering::Greater);
        // order dominates position within the block
        assert_eq!(rk.compare(DiffVar::new(r.input(0), 2), a).unwrap(), Ordering::Greater);
    }

    #[test]
    fn undeclared_base_is_an_arity_error() {
        let r = ring();
        let rk = r.default_ranking();
        assert!(matches!(rk.compare(DiffVar::new(9, 0), DiffVar::new(0, 0)), Err(Error::Arity(_))));
        assert!(r.check_var(DiffVar::new(4, 0)).is_err());
    }

    #[test]
    fn names_and_indices() {
        let r = ring();
        let v = DiffVar::new(r.output(1), 4);
        assert_eq!(r.var_at(r.index(v)), v);
        assert_eq!(r.var_name(v), "y2^(4)");
        assert_eq!(r.var_name(DiffVar::new(r.output(0), 2)), "y1''");
    }

    #[test]
    fn model_poly_round_trip() {
        let r = ring();
        // model ring: a, x, u
        let p = &(&MPoly::var(0) * &MPoly::var(1)) + &MPoly::var(2).pow(2);
        let d = r.from_model_poly(&p);
        assert_eq!(r.to_model_poly(&d), Some(p));
    }
}
