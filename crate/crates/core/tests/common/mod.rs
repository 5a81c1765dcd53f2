//! Fixtures, strategies and property bodies shared by the property suite
//! and the acceptance target.
#![allow(dead_code)]

use std::path::PathBuf;

use ioident::arith::{
    poly_reduce_mod_basis, ratio, BlockKind, Field, MPoly, Monomial, OrdPoly, Poly, Rat, RatFun, TermOrder,
};
use ioident::diff::{
    differentiate, is_reduced, ritt_reduce, AutoreducedSet, DiffPoly, DiffRing, DiffVar, Ranking,
};
use ioident::elim::{characteristic_presentation, groebner};
use ioident::model::{build_sigma_generators, parse_model, Model};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const FIXTURES: [&str; 3] = ["linear", "oscillator", "hidden_rate"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.model"))
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture exists")
}

pub fn fixture(name: &str) -> Model {
    parse_model(&fixture_text(name)).expect("fixture parses")
}

/// Two parameters `a, b`; bases `y1, y2, u`.
pub fn io_ring() -> DiffRing {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    DiffRing::new(&s(&["a", "b"]), &s(&[]), &s(&["y1", "y2"]), &s(&["u"]))
}

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |q| !Field::is_zero(q))
}

/// Rational constant, or a constant plus a multiple of one parameter.
pub fn coefficient() -> impl Strategy<Value = RatFun> {
    prop_oneof![
        3 => nonzero_rat().prop_map(RatFun::constant),
        1 => (small_rat(), nonzero_rat(), 0usize..2).prop_map(|(c, k, i)| {
            RatFun::constant(c).add(&RatFun::var(i).mul(&RatFun::constant(k)))
        }),
    ]
}

pub fn diff_monomial(nbases: usize, max_order: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec((0..nbases, 0..=max_order, 1u32..=2), 0..=2).prop_map(move |factors| {
        factors.into_iter().fold(Monomial::one(), |m, (b, o, e)| {
            m.mul(&Monomial::var(o as usize * nbases + b, e))
        })
    })
}

pub fn diff_poly(nbases: usize, max_order: u32) -> impl Strategy<Value = DiffPoly> {
    prop::collection::vec((diff_monomial(nbases, max_order), coefficient()), 1..=3)
        .prop_map(Poly::from_terms)
}

pub fn diff_var(nbases: usize) -> impl Strategy<Value = DiffVar> {
    (0..nbases, 0u32..5).prop_map(|(b, o)| DiffVar::new(b, o))
}

/// A random permutation of the bases split into one or two blocks.
pub fn ranking(nbases: usize) -> impl Strategy<Value = Ranking> {
    (Just((0..nbases).collect::<Vec<_>>()).prop_shuffle(), 0..nbases).prop_map(move |(perm, cut)| {
        let blocks = if cut == 0 {
            vec![perm]
        } else {
            vec![perm[..cut].to_vec(), perm[cut..].to_vec()]
        };
        Ranking::new(blocks, nbases).expect("valid ranking")
    })
}

pub fn leibniz(f: &DiffPoly, g: &DiffPoly, nbases: usize) -> Result<(), TestCaseError> {
    let lhs = differentiate(&f.mul(g), nbases);
    let rhs = differentiate(f, nbases).mul(g).add(&f.mul(&differentiate(g, nbases)));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn ranking_axioms(r: &Ranking, v: DiffVar, w: DiffVar) -> Result<(), TestCaseError> {
    use std::cmp::Ordering::*;
    prop_assert_eq!(r.compare(v.derivative(), v).unwrap(), Greater);
    let vw = r.compare(v, w).unwrap();
    prop_assert_eq!(vw, r.compare(w, v).unwrap().reverse());
    prop_assert_eq!(vw == Equal, v == w);
    prop_assert_eq!(r.compare(v.derivative(), w.derivative()).unwrap(), vw);
    Ok(())
}

/// Ritt reduction: the certificate identity expands to zero and the
/// remainder is reduced with respect to every element.
pub fn ritt_properties(set: &AutoreducedSet, f: &DiffPoly) -> Result<(), TestCaseError> {
    let (rem, cert) = ritt_reduce(f, set);
    prop_assert!(cert.verify(f, &rem, set), "certificate identity fails");
    let nb = set.ranking().nbases();
    for d in set.leader_data() {
        prop_assert!(is_reduced(&rem, d, nb), "remainder not reduced");
    }
    Ok(())
}

pub fn autoreduced_set(r: Ranking) -> impl Strategy<Value = AutoreducedSet> {
    prop::collection::vec(diff_poly(3, 2), 1..=2)
        .prop_filter_map("not autoreduced", move |elems| AutoreducedSet::new(elems, &r).ok())
}

pub fn algebraic_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 3), -3i64..=3), 1..=3).prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exps(e), Rat::from_integer(c.into()))),
        )
    })
}

pub fn term_order() -> impl Strategy<Value = TermOrder> {
    prop_oneof![
        Just(TermOrder::Lex),
        Just(TermOrder::GrLex),
        Just(TermOrder::GRevLex),
        Just(TermOrder::Block(vec![(1, BlockKind::GRevLex), (usize::MAX, BlockKind::Lex)])),
    ]
}

fn s_polynomial(f: &MPoly, g: &MPoly, order: &TermOrder) -> MPoly {
    let (fo, go) = (OrdPoly::from_poly(f, order), OrdPoly::from_poly(g, order));
    let l = fo.lm().lcm(go.lm());
    let a = f.mul_term(&l.div(fo.lm()).unwrap(), &fo.lc().inv());
    let b = g.mul_term(&l.div(go.lm()).unwrap(), &go.lc().inv());
    a.sub(&b)
}

/// Every S-polynomial of the computed basis, and every generator, reduces
/// to zero.
pub fn groebner_closure(gens: &[MPoly], order: &TermOrder) -> Result<(), TestCaseError> {
    let basis = groebner(gens, order);
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            let s = s_polynomial(f, g, order);
            prop_assert!(poly_reduce_mod_basis(&s, &basis, order).is_zero());
        }
    }
    for g in gens {
        prop_assert!(poly_reduce_mod_basis(g, &basis, order).is_zero());
    }
    Ok(())
}

pub struct Baseline {
    pub model: Model,
    pub ring: DiffRing,
    pub ranking: Ranking,
    pub gens: Vec<DiffPoly>,
    pub saturator: DiffPoly,
    pub elements: Vec<DiffPoly>,
}

pub fn baseline(name: &str) -> Baseline {
    let model = fixture(name);
    let ring = model.diff_ring();
    let ranking = ring.default_ranking();
    let sg = build_sigma_generators(&model);
    let gens = sg.all();
    let saturator = ring.from_model_poly(&sg.saturator);
    let elements = characteristic_presentation(&ring, &gens, &saturator, &ranking, model.n(), model.m())
        .expect("presentation")
        .elements;
    Baseline {
        model,
        ring,
        ranking,
        gens,
        saturator,
        elements,
    }
}

/// Shuffled and rescaled generators give the same presentation.
pub fn presentation_invariance(b: &Baseline, perm: &[usize], scales: &[Rat]) -> Result<(), TestCaseError> {
    let gens: Vec<DiffPoly> = perm
        .iter()
        .zip(scales)
        .map(|(&i, c)| b.gens[i].scale(&RatFun::constant(c.clone())))
        .collect();
    let c = characteristic_presentation(&b.ring, &gens, &b.saturator, &b.ranking, b.model.n(), b.model.m())
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&c.elements, &b.elements);
    Ok(())
}

pub fn shuffled_scales(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<Rat>)> {
    (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(nonzero_rat(), n),
    )
}
