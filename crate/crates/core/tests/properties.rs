mod common;

use common::*;
use ioident::arith::{poly_gcd, Field, MPoly, RatFun};
use ioident::diff::{differentiate, DiffPoly};
use ioident::elim::groebner;
use ioident::ident::{field_membership, io_identifiable_field, polynomial_first_integrals};
use ioident::series::{eval_mpoly, eval_on_series, residuals, sample_solution, TruncSeries};
use proptest::prelude::*;
use std::sync::OnceLock;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

fn baselines() -> &'static Vec<Baseline> {
    static B: OnceLock<Vec<Baseline>> = OnceLock::new();
    B.get_or_init(|| FIXTURES.iter().map(|f| baseline(f)).collect())
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn polynomial_ring_axioms(f in algebraic_poly(), g in algebraic_poly(), h in algebraic_poly()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn gcd_divides_both(f in algebraic_poly(), g in algebraic_poly(), h in algebraic_poly()) {
        prop_assume!(!h.is_zero());
        let (a, b) = (f.mul(&h), g.mul(&h));
        let d = poly_gcd(&a, &b);
        if !a.is_zero() {
            prop_assert!(a.exact_div(&d).is_ok());
        }
        if !b.is_zero() {
            prop_assert!(b.exact_div(&d).is_ok());
        }
        if !a.is_zero() && !b.is_zero() {
            prop_assert!(d.exact_div(&h).is_ok(), "common factor does not divide the gcd");
        }
    }

    #[test]
    fn rational_functions_cross_multiply(p in algebraic_poly(), q in algebraic_poly(), r in algebraic_poly(), s in algebraic_poly()) {
        prop_assume!(!q.is_zero() && !s.is_zero());
        let x = RatFun::new(p.clone(), q.clone()).unwrap();
        let y = RatFun::new(r.clone(), s.clone()).unwrap();
        let sum = x.add(&y);
        prop_assert_eq!(sum.num().mul(&q.mul(&s)), sum.den().mul(&p.mul(&s).add(&r.mul(&q))));
        prop_assert_eq!(x.num().mul(&q), x.den().mul(&p));
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn leibniz_rule(f in diff_poly(3, 3), g in diff_poly(3, 3)) {
        leibniz(&f, &g, 3)?;
    }

    #[test]
    fn derivation_is_additive(f in diff_poly(3, 3), g in diff_poly(3, 3)) {
        prop_assert_eq!(differentiate(&f.add(&g), 3), differentiate(&f, 3).add(&differentiate(&g, 3)));
    }

    #[test]
    fn ranking_is_a_ranking(r in ranking(3), v in diff_var(3), w in diff_var(3)) {
        ranking_axioms(&r, v, w)?;
    }

    #[test]
    fn ranking_order_on_monomials_is_multiplicative(
        r in ranking(3),
        a in diff_monomial(3, 3), b in diff_monomial(3, 3), c in diff_monomial(3, 3)
    ) {
        prop_assert_eq!(r.cmp_monomials(&a, &b), r.cmp_monomials(&a.mul(&c), &b.mul(&c)));
        if !c.is_one() {
            prop_assert_eq!(r.cmp_monomials(&a.mul(&c), &a), std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn ritt_reduction_certificate(
        (set, f) in ranking(3).prop_flat_map(|r| (autoreduced_set(r), diff_poly(3, 3)))
    ) {
        ritt_properties(&set, &f)?;
    }

    #[test]
    fn groebner_bases_are_closed(gens in prop::collection::vec(algebraic_poly(), 1..=3), order in term_order()) {
        groebner_closure(&gens, &order)?;
    }

    #[test]
    fn groebner_basis_is_canonical(
        (gens, perm) in prop::collection::vec(algebraic_poly(), 1..=3)
            .prop_flat_map(|g| { let n = g.len(); (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle()) }),
        order in term_order()
    ) {
        let shuffled: Vec<MPoly> = perm.iter().map(|&i| gens[i].clone()).collect();
        prop_assert_eq!(groebner(&gens, &order), groebner(&shuffled, &order));
    }

    #[test]
    fn presentation_is_invariant(
        (k, (perm, scales)) in (0usize..3).prop_flat_map(|k| {
            let n = baselines()[k].gens.len();
            (Just(k), shuffled_scales(n))
        })
    ) {
        presentation_invariance(&baselines()[k], &perm, &scales)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn residuals_vanish_on_sampled_solutions(k in 0usize..3, seed in any::<u64>()) {
        let m = fixture(FIXTURES[k]);
        let s = sample_solution(&m, 8, seed, |_| true).unwrap();
        for r in residuals(&m, &s) {
            prop_assert!(r.is_zero());
        }
    }

    #[test]
    fn io_equations_vanish_on_sampled_solutions(k in 0usize..3, seed in any::<u64>()) {
        let b = &baselines()[k];
        let s = sample_solution(&b.model, 10, seed, |_| true).unwrap();
        for e in &b.elements {
            prop_assert!(eval_on_series(e, &b.ring, &s).unwrap().is_zero());
        }
    }

    #[test]
    fn series_evaluation_is_linear(
        f in diff_poly(1, 3), g in diff_poly(1, 3), c in nonzero_rat(), seed in any::<u64>()
    ) {
        // Polynomials in y alone, moved into the hidden-rate ring (two parameters, bases x1, x2, y).
        let b = &baselines()[2];
        let ring = &b.ring;
        let shift = |p: &DiffPoly| p.remap_vars(|order| order * ring.nbases() + ring.output(0));
        let (f, g) = (shift(&f), shift(&g));
        let s = sample_solution(&b.model, 8, seed, |_| true).unwrap();
        let lhs = eval_on_series(&f.add(&g.scale(&RatFun::constant(c.clone()))), ring, &s).unwrap();
        let rhs = eval_on_series(&f, ring, &s).unwrap().add(&eval_on_series(&g, ring, &s).unwrap().scale(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn first_integrals_are_constant_along_solutions(k in 0usize..3, seed in any::<u64>()) {
        let m = fixture(FIXTURES[k]);
        let order = 8;
        let s = sample_solution(&m, order, seed, |_| true).unwrap();
        let len = order + 1;
        let mut values: Vec<TruncSeries> = s.params.iter().map(|p| TruncSeries::constant(p.clone(), len)).collect();
        values.extend(s.x.iter().cloned());
        values.extend(s.u.iter().cloned());
        for p in polynomial_first_integrals(&m, 2).basis {
            let v = eval_mpoly(&p, &values, len);
            prop_assert!(v.coeffs()[1..].iter().all(Field::is_zero));
        }
    }

    #[test]
    fn membership_is_closed_under_field_operations(
        k in 0usize..3, a in nonzero_rat(), b in nonzero_rat(), e in 1u32..3
    ) {
        let m = fixture(FIXTURES[k]);
        let field = io_identifiable_field(&m).unwrap();
        for g in &field.generators {
            prop_assert!(field_membership(g, &field));
        }
        let one = RatFun::one();
        let expr = field.generators.iter().fold(RatFun::constant(a.clone()), |acc, g| {
            acc.add(&g.pow(e).mul(&RatFun::constant(b.clone())))
        });
        prop_assert!(field_membership(&expr, &field));
        if !expr.is_zero() {
            prop_assert!(field_membership(&one.div(&expr), &field));
        }
    }
}

#[test]
fn monomial_order_matches_printing() {
    let b = &baselines()[1];
    let strings: Vec<String> = b.elements.iter().map(|e| ioident::diff::fmt_diffpoly(e, &b.ring, &b.ranking)).collect();
    assert_eq!(strings, ["y2'", "y1'' + w*y1*y2 + w^2*y1"]);
}
