//! IO equations by prolongation, Gröbner elimination of the states and
//! extraction of a monic characteristic presentation.

mod groebner;
mod normal;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{BlockKind, Monomial, RatFun, TermOrder};
use crate::diff::{
    differentiate_n, fmt_diffpoly, is_autoreduced, leader_data, leader_index, normalize_monic, ritt_reduce,
    AutoreducedSet, DiffPoly, DiffRing, DiffVar, Ranking,
};
use crate::error::{DepthExhausted, Error, Result};
use crate::model::{build_sigma_generators, Model, SigmaGenerators};
use crate::series::{default_order, not_in_ideal, Membership};

pub use groebner::{groebner, is_groebner, saturate};
pub use normal::{nonleading_content, normalize_element};
pub(crate) use normal::content_outside;

/// Derivatives `0..=depth` of the generators, with derivative symbols as
/// independent algebraic variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedSystem {
    pub depth: usize,
    /// Every derivative variable occurring, in decreasing rank.
    pub variables: Vec<DiffVar>,
    pub equations: Vec<DiffPoly>,
    pub saturators: Vec<DiffPoly>,
}

pub fn prolong(g: &SigmaGenerators, ring: &DiffRing, ranking: &Ranking, depth: usize) -> ProlongedSystem {
    let sat = ring.from_model_poly(&g.saturator);
    prolong_generators(&g.all(), &sat, ring, ranking, depth)
}

pub fn prolong_generators(
    gens: &[DiffPoly],
    saturator: &DiffPoly,
    ring: &DiffRing,
    ranking: &Ranking,
    depth: usize,
) -> ProlongedSystem {
    let nb = ring.nbases();
    let mut equations = Vec::new();
    for g in gens {
        for k in 0..=depth {
            equations.push(differentiate_n(g, k as u32, nb));
        }
    }
    let mut vars: BTreeSet<usize> = BTreeSet::new();
    for e in equations.iter().chain(std::iter::once(saturator)) {
        vars.extend(e.vars());
    }
    let mut variables: Vec<DiffVar> = vars.into_iter().map(|i| ring.var_at(i)).collect();
    variables.sort_by(|a, b| ranking.compare(*b, *a).expect("ranked"));
    ProlongedSystem {
        depth,
        variables,
        equations,
        saturators: vec![saturator.clone()],
    }
}

/// The reduced lex basis (variables in decreasing rank) of the prolonged
/// ideal saturated at the saturators, intersected with the state-free
/// polynomials.
pub fn eliminate_states(sys: &ProlongedSystem, ring: &DiffRing) -> Vec<DiffPoly> {
    let tagged: Vec<&DiffPoly> = sys.saturators.iter().filter(|s| !s.is_constant()).collect();
    let ntags = tagged.len();
    let states: Vec<usize> = sys
        .variables
        .iter()
        .filter(|v| ring.is_state(v.base))
        .map(|v| ring.index(*v))
        .collect();
    let rest: Vec<usize> = sys
        .variables
        .iter()
        .filter(|v| !ring.is_state(v.base))
        .map(|v| ring.index(*v))
        .collect();
    let mut to_gb: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, &i) in states.iter().chain(&rest).enumerate() {
        to_gb.insert(i, ntags + k);
    }
    let from_gb: BTreeMap<usize, usize> = to_gb.iter().map(|(&d, &g)| (g, d)).collect();
    let mut gens: Vec<DiffPoly> = sys.equations.iter().map(|e| e.remap_vars(|i| to_gb[&i])).collect();
    for (t, s) in tagged.iter().enumerate() {
        let tag = DiffPoly::var(t);
        gens.push(tag.mul(&s.remap_vars(|i| to_gb[&i])).sub(&DiffPoly::one()));
    }
    let cut = ntags + states.len();
    let order = TermOrder::Block(vec![(cut, BlockKind::GRevLex), (usize::MAX, BlockKind::Lex)]);
    groebner(&gens, &order)
        .into_iter()
        .filter(|g| g.vars().iter().all(|&v| v >= cut))
        .map(|g| g.remap_vars(|i| from_gb[&i]))
        .collect()
}

/// Autoreduced, monic presentation; elements in increasing rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPresentation {
    pub elements: Vec<DiffPoly>,
    pub ranking: Ranking,
    /// Prolongation depth at which it was found.
    pub depth: usize,
}

impl CharPresentation {
    pub fn strings(&self, ring: &DiffRing) -> Vec<String> {
        self.elements.iter().map(|e| fmt_diffpoly(e, ring, &self.ranking)).collect()
    }

    pub fn max_leader_order(&self) -> usize {
        self.elements
            .iter()
            .filter_map(|e| leader_data(e, &self.ranking).ok())
            .map(|d| d.lead.order as usize)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct ElimOptions {
    /// Defaults to the number of states.
    pub max_depth: Option<usize>,
    pub seed: u64,
    pub trials: usize,
    /// Truncation for the series check; defaults per element.
    pub series_order: Option<usize>,
}

impl Default for ElimOptions {
    fn default() -> Self {
        ElimOptions {
            max_depth: None,
            seed: 0,
            trials: 5,
            series_order: None,
        }
    }
}

/// Outcome of the checks run on a presentation.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct VerificationReport {
    pub autoreduced: bool,
    pub initials_in_nonleading: bool,
    pub no_nonleading_factor: bool,
    pub monic: bool,
    pub vanishes_on_series: bool,
    pub eliminated_reduce_to_zero: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, ok)| *ok)
    }

    pub fn checks(&self) -> [(&'static str, bool); 6] {
        [
            ("autoreduced", self.autoreduced),
            ("initials_in_nonleading", self.initials_in_nonleading),
            ("no_nonleading_factor", self.no_nonleading_factor),
            ("monic", self.monic),
            ("vanishes_on_series", self.vanishes_on_series),
            ("eliminated_reduce_to_zero", self.eliminated_reduce_to_zero),
        ]
    }
}

fn check_ranking(ring: &DiffRing, r: &Ranking) -> Result<()> {
    for s in 0..ring.n_states() {
        for b in ring.n_states()..ring.nbases() {
            let ks = r.key(DiffVar::new(s, 0))?;
            let kb = r.key(DiffVar::new(b, 0))?;
            if ks.0 <= kb.0 {
                return Err(Error::Arity("ranking must put the states in a block above outputs and inputs".into()));
            }
        }
    }
    Ok(())
}

/// Verified monic characteristic presentation of the IO ideal, with the
/// default options.
pub fn io_equations(m: &Model, r: &Ranking, max_depth: usize) -> Result<CharPresentation> {
    let opts = ElimOptions {
        max_depth: Some(max_depth),
        ..ElimOptions::default()
    };
    io_equations_with(m, r, &opts).map(|(c, _)| c)
}

pub fn io_equations_with(m: &Model, r: &Ranking, opts: &ElimOptions) -> Result<(CharPresentation, VerificationReport)> {
    let ring = m.diff_ring();
    check_ranking(&ring, r)?;
    let gens = build_sigma_generators(m);
    let sat = ring.from_model_poly(&gens.saturator);
    let max_depth = opts.max_depth.unwrap_or(m.n());
    let mut last = (Vec::new(), 0);
    for depth in max_depth.min(1)..=max_depth {
        let sys = prolong_generators(&gens.all(), &sat, &ring, r, depth);
        let j = eliminate_states(&sys, &ring);
        match extract_presentation(&j, &ring, r, m.m()) {
            Ok(elements) => {
                let c = CharPresentation {
                    elements,
                    ranking: r.clone(),
                    depth,
                };
                let report = verify_char_presentation(&c, m, opts);
                if report.passed() {
                    return Ok((c, report));
                }
                last = (j, m.m());
            }
            Err(found) => last = (j, found),
        }
    }
    Err(Error::DepthExhausted(Box::new(DepthExhausted {
        max_depth,
        eliminated: last.0.iter().map(|p| fmt_diffpoly(p, &ring, r)).collect(),
        leaders_found: last.1,
        leaders_expected: m.m(),
    })))
}

/// Presentation from raw generators without the series and re-elimination
/// checks: deepens until `expected` differential leaders appear.
pub fn characteristic_presentation(
    ring: &DiffRing,
    gens: &[DiffPoly],
    saturator: &DiffPoly,
    r: &Ranking,
    max_depth: usize,
    expected: usize,
) -> Result<CharPresentation> {
    check_ranking(ring, r)?;
    let mut last = (Vec::new(), 0);
    for depth in max_depth.min(1)..=max_depth {
        let sys = prolong_generators(gens, saturator, ring, r, depth);
        let j = eliminate_states(&sys, ring);
        match extract_presentation(&j, ring, r, expected) {
            Ok(elements) => {
                return Ok(CharPresentation {
                    elements,
                    ranking: r.clone(),
                    depth,
                })
            }
            Err(found) => last = (j, found),
        }
    }
    Err(Error::DepthExhausted(Box::new(DepthExhausted {
        max_depth,
        eliminated: last.0.iter().map(|p| fmt_diffpoly(p, ring, r)).collect(),
        leaders_found: last.1,
        leaders_expected: expected,
    })))
}

/// Orders polynomials by their terms in decreasing ranking-lex order.
fn cmp_polys(a: &DiffPoly, b: &DiffPoly, ring: &DiffRing, r: &Ranking) -> Ordering {
    fn sorted<'a>(p: &'a DiffPoly, r: &Ranking) -> Vec<(&'a Monomial, &'a RatFun)> {
        let mut t: Vec<_> = p.terms().collect();
        t.sort_by(|x, y| r.cmp_monomials(y.0, x.0));
        t
    }
    let (ta, tb) = (sorted(a, r), sorted(b, r));
    for (x, y) in ta.iter().zip(&tb) {
        match r.cmp_monomials(x.0, y.0) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    ta.len()
        .cmp(&tb.len())
        .then_with(|| fmt_diffpoly(a, ring, r).cmp(&fmt_diffpoly(b, ring, r)))
}

/// Differential leaders of the eliminated basis: leaders of its elements
/// that are not proper derivatives of other leaders, increasing rank.
pub fn differential_leaders(j: &[DiffPoly], ring: &DiffRing, r: &Ranking) -> Vec<DiffVar> {
    let dependent: BTreeSet<DiffVar> = j
        .iter()
        .filter_map(|p| leader_index(p, r))
        .map(|i| ring.var_at(i))
        .collect();
    let mut l: Vec<DiffVar> = dependent
        .iter()
        .copied()
        .filter(|v| !dependent.iter().any(|w| v.is_proper_derivative_of(*w)))
        .collect();
    l.sort_by(|a, b| r.compare(*a, *b).expect("ranked"));
    l
}

/// Builds the chain leader by leader; `Err(found)` when fewer than
/// `expected` differential leaders are available.
fn extract_presentation(
    j: &[DiffPoly],
    ring: &DiffRing,
    r: &Ranking,
    expected: usize,
) -> std::result::Result<Vec<DiffPoly>, usize> {
    let leaders = differential_leaders(j, ring, r);
    if leaders.len() < expected {
        return Err(leaders.len());
    }
    let mut chain: Vec<DiffPoly> = Vec::new();
    for (k, &lead) in leaders.iter().enumerate() {
        let li = ring.index(lead);
        let mut cands: Vec<&DiffPoly> = j.iter().filter(|p| leader_index(p, r) == Some(li)).collect();
        cands.sort_by(|a, b| {
            a.degree_in(li)
                .cmp(&b.degree_in(li))
                .then_with(|| cmp_polys(a, b, ring, r))
        });
        let set = AutoreducedSet::new(chain.clone(), r).map_err(|_| k)?;
        let mut chosen = None;
        for cand in cands {
            let (rem, _) = ritt_reduce(cand, &set);
            if rem.is_zero() || leader_index(&rem, r) != Some(li) {
                continue;
            }
            if let Ok(e) = normalize_element(&rem, &chain, ring, r) {
                chosen = Some(e);
                break;
            }
        }
        match chosen {
            Some(e) => chain.push(e),
            None => return Err(k),
        }
    }
    Ok(chain)
}

/// Checks the presentation conditions, vanishing on sampled solutions and
/// reduction of the eliminated ideal to zero.
pub fn verify_char_presentation(c: &CharPresentation, m: &Model, opts: &ElimOptions) -> VerificationReport {
    let ring = m.diff_ring();
    let r = &c.ranking;
    let nb = ring.nbases();
    let data: Vec<_> = c.elements.iter().map(|e| leader_data(e, r)).collect();
    let all_nonconstant = data.iter().all(|d| d.is_ok());
    let leaders: BTreeSet<usize> = data.iter().filter_map(|d| d.as_ref().ok()).map(|d| d.index).collect();

    let autoreduced = all_nonconstant && is_autoreduced(&c.elements, r).unwrap_or(false);
    let initials_in_nonleading = all_nonconstant
        && data
            .iter()
            .filter_map(|d| d.as_ref().ok())
            .all(|d| d.init.vars().iter().all(|v| !leaders.contains(v)));
    let no_nonleading_factor = c
        .elements
        .iter()
        .all(|e| nonleading_content(e, &leaders, ring.params().len()).is_constant());
    let monic = c
        .elements
        .iter()
        .all(|e| normalize_monic(e, r).map(|n| &n == e).unwrap_or(false));
    let vanishes_on_series = c.elements.iter().all(|e| {
        let order = opts.series_order.unwrap_or(0).max(default_order(e, nb));
        matches!(
            not_in_ideal(e, m, opts.trials.max(1), order, opts.seed),
            Ok(Membership::Undetermined { .. })
        )
    });
    let eliminated_reduce_to_zero = autoreduced && {
        let gens = build_sigma_generators(m);
        let sys = prolong(&gens, &ring, r, c.max_leader_order());
        let j = eliminate_states(&sys, &ring);
        match AutoreducedSet::new(c.elements.clone(), r) {
            Ok(set) => j.iter().all(|p| ritt_reduce(p, &set).0.is_zero()),
            Err(_) => false,
        }
    };
    VerificationReport {
        autoreduced,
        initials_in_nonleading,
        no_nonleading_factor,
        monic,
        vanishes_on_series,
        eliminated_reduce_to_zero,
    }
}

/// Coefficients of the presentation elements, in element order.
pub fn coefficients(c: &CharPresentation) -> Vec<RatFun> {
    c.elements
        .iter()
        .flat_map(|e| e.terms().map(|(_, k)| k.clone()).collect::<Vec<_>>())
        .collect()
}
