mod common;

use common::*;
use ioident::arith::{Field, Rat};
use ioident::elim::{io_equations, verify_char_presentation, ElimOptions};
use ioident::ident::{extend_model_for_function, io_identifiable_field};
use ioident::model::{parse_diffpoly, parse_expression, parse_model};
use ioident::series::{sample_solution, solve_series, SamplePoint};

#[test]
fn io_strings_parse_back_to_the_presentation() {
    for name in FIXTURES {
        let m = fixture(name);
        let ring = m.diff_ring();
        let c = io_equations(&m, &ring.default_ranking(), m.n()).unwrap();
        for (s, e) in c.strings(&ring).iter().zip(&c.elements) {
            assert_eq!(&parse_diffpoly(s, &ring).unwrap(), e, "{name}: {s}");
        }
    }
}

#[test]
fn presentation_verifies_with_other_seeds() {
    for name in FIXTURES {
        let m = fixture(name);
        let r = m.diff_ring().default_ranking();
        let c = io_equations(&m, &r, m.n()).unwrap();
        for seed in [1, 99, 12345] {
            let opts = ElimOptions {
                seed,
                ..ElimOptions::default()
            };
            assert!(verify_char_presentation(&c, &m, &opts).passed(), "{name} seed {seed}");
        }
    }
}

#[test]
fn presentation_is_stable_under_deeper_prolongation() {
    for name in FIXTURES {
        let m = fixture(name);
        let r = m.diff_ring().default_ranking();
        let c = io_equations(&m, &r, m.n()).unwrap();
        let deeper = io_equations(&m, &r, m.n() + 1).unwrap();
        assert_eq!(c.elements, deeper.elements, "{name}");
    }
}

#[test]
fn field_is_invariant_under_equation_order_and_scaling() {
    let text = "params: m1, m2\nstates: x1, x2\noutputs: y\nx2' = (2*x1*x2 + 2*m1*x1 + 2*m2)/2\nx1' = 0*m1\ny = x2\n";
    let m = parse_model(text).unwrap();
    let base = io_identifiable_field(&fixture("hidden_rate")).unwrap();
    assert_eq!(io_identifiable_field(&m).unwrap(), base);
}

#[test]
fn rational_model_with_denominator() {
    // x' = x/(1 + a*x): the presentation has a non-trivial initial.
    let m = parse_model("params: a, b\nstates: x\noutputs: y\nx' = b*x/(1 + a*x)\ny = x\n").unwrap();
    let ring = m.diff_ring();
    let r = ring.default_ranking();
    let c = io_equations(&m, &r, 1).unwrap();
    assert_eq!(c.strings(&ring), ["y*y' + 1/a*y' - b/a*y"]);
    let field = io_identifiable_field(&m).unwrap();
    assert_eq!(field.strings(&m.params), ["1/a", "b/a"]);
}

#[test]
fn extended_model_keeps_original_outputs() {
    for (name, h) in [("linear", "x1"), ("oscillator", "x1*x3 + w"), ("hidden_rate", "m1*x2")] {
        let m = fixture(name);
        let hf = parse_expression(h, &m).unwrap();
        let ext = extend_model_for_function(&m, &hf).unwrap();
        for seed in 0..5u64 {
            let s = sample_solution(&m, 6, seed, |_| true).unwrap();
            let mut point: Vec<Rat> = s.params.clone();
            point.extend(s.x.iter().map(|x| x.coeff(0).clone()));
            let h0 = hf.eval(&point).unwrap();
            let mut x0: Vec<Rat> = s.x.iter().map(|x| x.coeff(0).clone()).collect();
            x0.push(h0);
            let p = SamplePoint {
                params: s.params.clone(),
                x0,
                inputs: s.u.clone(),
                seed,
            };
            let t = solve_series(&ext, &p, 6).unwrap();
            assert_eq!(&t.y[..m.m()], &s.y[..], "{name} seed {seed}");
            // the new output x_new - h vanishes along the solution
            assert!(t.y[m.m()].coeffs().iter().all(Field::is_zero), "{name}");
        }
    }
}
