use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{poly_lcm, Field, MPoly, Monomial, Rat, RatFun};
use crate::elim::content_outside;
use crate::error::{Error, Result};
use crate::model::Model;

/// Polynomial first integrals of degree at most `degree_bound`, as
/// polynomials in the model ring (parameters and states).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstIntegralBasis {
    pub degree_bound: usize,
    pub basis: Vec<MPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualityStatus {
    /// No polynomial first integral up to this degree; higher degrees and
    /// rational integrals are not excluded.
    EqualityCertifiedUpToDegree(usize),
    FirstIntegralFound(MPoly),
    Inconclusive,
}

/// Basis of the right kernel, one vector per free column, from the reduced
/// row echelon form.
pub fn nullspace<C: Field>(rows: &[Vec<C>], ncols: usize) -> Vec<Vec<C>> {
    let mut a: Vec<Vec<C>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].inv();
        for x in a[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![C::zero(); ncols];
            v[f] = C::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = a[row][f].neg();
            }
            v
        })
        .collect()
}

/// Exponent vectors in `n` variables of total degree `1..=d`.
fn exponents(n: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, d as u32, &mut vec![0; n], &mut out);
    out.retain(|e| e.iter().any(|&x| x > 0));
    out
}

/// Solves `∇p · f = 0` for `p` with no constant term and degree at most
/// `degree_bound` in the states, coefficients in the parameter field.
pub fn polynomial_first_integrals(m: &Model, degree_bound: usize) -> FirstIntegralBasis {
    let lambda = m.lambda();
    let mut unknowns: Vec<Monomial> = exponents(m.n(), degree_bound)
        .into_iter()
        .map(|e| {
            let mut full = vec![0; lambda];
            full.extend(e);
            Monomial::from_exps(full)
        })
        .collect();
    unknowns.sort();

    let mut rows: BTreeMap<Monomial, Vec<RatFun>> = BTreeMap::new();
    for (col, mono) in unknowns.iter().enumerate() {
        let p = MPoly::term(mono.clone(), Rat::one());
        let mut flow = MPoly::zero();
        for i in 0..m.n() {
            flow = flow.add(&p.derivative(m.state_var(i)).mul(&m.f[i]));
        }
        for (t, c) in flow.terms() {
            let e = t.exps();
            let cut = lambda.min(e.len());
            let params = Monomial::from_exps(e[..cut].to_vec());
            let rest = Monomial::from_exps([vec![0; cut], e[cut..].to_vec()].concat());
            let row = rows.entry(rest).or_insert_with(|| vec![RatFun::zero(); unknowns.len()]);
            row[col] = row[col].add(&RatFun::from_poly(MPoly::term(params, c.clone())));
        }
    }
    let rows: Vec<Vec<RatFun>> = rows.into_values().collect();
    let states: BTreeSet<usize> = (0..m.n()).map(|i| m.state_var(i)).collect();
    let basis = nullspace(&rows, unknowns.len())
        .into_iter()
        .map(|v| {
            let l = v.iter().fold(MPoly::one(), |acc, c| poly_lcm(&acc, c.den()));
            let mut p = MPoly::zero();
            for (c, mono) in v.iter().zip(&unknowns) {
                if c.is_zero() {
                    continue;
                }
                let scaled = c.num().mul(&l.exact_div(c.den()).expect("lcm divides"));
                p = p.add(&scaled.mul_term(mono, &Rat::one()));
            }
            let g = content_outside(&p, &states);
            let p = if g.is_constant() { p } else { p.exact_div(&g).expect("content divides") };
            p.integer_normalized()
        })
        .collect();
    FirstIntegralBasis { degree_bound, basis }
}

pub fn equality_certificate(m: &Model, degree_bound: usize) -> EqualityStatus {
    if degree_bound == 0 {
        return EqualityStatus::Inconclusive;
    }
    match polynomial_first_integrals(m, degree_bound).basis.into_iter().next() {
        Some(p) => EqualityStatus::FirstIntegralFound(p),
        None => EqualityStatus::EqualityCertifiedUpToDegree(degree_bound),
    }
}

fn fresh(prefix: &str, k: usize, taken: &[&String]) -> String {
    let mut name = format!("{prefix}{k}");
    while taken.iter().any(|t| **t == name) {
        name.push('_');
    }
    name
}

/// Adds a state tracking `h` along trajectories and an output equal to the
/// difference, `x_new' = (∇h · f) / Q`, `y_new = x_new - h`.
pub fn extend_model_for_function(m: &Model, h: &RatFun) -> Result<Model> {
    let first_input = m.lambda() + m.n();
    if h.max_var().is_some_and(|v| v >= first_input) {
        return Err(Error::UnsupportedFunction("function depends on an input".into()));
    }
    let shift = |i: usize| if i >= first_input { i + 1 } else { i };
    let mut state_rhs: Vec<RatFun> = (0..m.n()).map(|i| m.state_rhs(i).remap_vars(shift)).collect();
    let mut output_rhs: Vec<RatFun> = (0..m.m()).map(|j| m.output_rhs(j).remap_vars(shift)).collect();
    let mut flow = RatFun::zero();
    for i in 0..m.n() {
        flow = flow.add(&m.state_rhs(i).mul(&h.derivative(m.state_var(i))));
    }
    state_rhs.push(flow.remap_vars(shift));
    output_rhs.push(RatFun::var(first_input).sub(h));

    let taken: Vec<&String> = m.params.iter().chain(&m.states).chain(&m.inputs).chain(&m.outputs).collect();
    let mut states = m.states.clone();
    states.push(fresh("x", m.n() + 1, &taken));
    let mut outputs = m.outputs.clone();
    outputs.push(fresh("y", m.m() + 1, &taken));
    Model::from_rational(
        m.params.clone(),
        states,
        m.inputs.clone(),
        outputs,
        &state_rhs,
        &output_rhs,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::print::fmt_mpoly;
    use crate::arith::rat;
    use crate::model::{parse_expression, parse_model};

    const LINEAR: &str = "params: a, b\nstates: x1\noutputs: y1\nx1' = (a+b)*x1\ny1 = x1\n";
    const OSC: &str = "params: w\nstates: x1, x2, x3\noutputs: y1, y2\n\
x1' = (w + x3)*x2\nx2' = -w*x1\nx3' = 0\ny1 = x2\ny2 = x3\n";

    fn integrals(text: &str, d: usize) -> Vec<String> {
        let m = parse_model(text).unwrap();
        let names = m.ring();
        polynomial_first_integrals(&m, d)
            .basis
            .iter()
            .map(|p| fmt_mpoly(p, names.names()))
            .collect()
    }

    #[test]
    fn kernel_of_small_matrix() {
        let rows = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]];
        let k = nullspace(&rows, 3);
        assert_eq!(k, vec![vec![rat(-2), rat(1), rat(0)], vec![rat(-3), rat(0), rat(1)]]);
        assert_eq!(nullspace::<Rat>(&[], 2).len(), 2);
    }

    #[test]
    fn first_integrals_of_examples() {
        assert_eq!(integrals(OSC, 1), ["x3"]);
        assert!(integrals(LINEAR, 3).is_empty());
        assert_eq!(integrals(OSC, 2), ["x3", "x3^2"]);
        let three = integrals(OSC, 3);
        assert!(three.contains(&"w*x1^2 + w*x2^2 + x2^2*x3".to_string()), "{three:?}");
    }

    #[test]
    fn equality_status() {
        let linear = parse_model(LINEAR).unwrap();
        assert_eq!(equality_certificate(&linear, 3), EqualityStatus::EqualityCertifiedUpToDegree(3));
        assert_eq!(equality_certificate(&linear, 0), EqualityStatus::Inconclusive);
        let osc = parse_model(OSC).unwrap();
        assert!(matches!(equality_certificate(&osc, 1), EqualityStatus::FirstIntegralFound(_)));
    }

    #[test]
    fn extended_models() {
        let m = parse_model(LINEAR).unwrap();
        let e = |s: &str| parse_expression(s, &m).unwrap();
        let ext = extend_model_for_function(&m, &e("a+b")).unwrap();
        assert_eq!(ext.to_string(), "params: a, b\nstates: x1, x2\noutputs: y1, y2\nx1' = a*x1 + b*x1\nx2' = 0\ny1 = x1\ny2 = -a - b + x2\n");
        let ext = extend_model_for_function(&m, &e("x1")).unwrap();
        assert_eq!(ext.state_rhs(1), ext.state_rhs(0));
        assert_eq!(
            ext.output_rhs(1),
            RatFun::from_poly(MPoly::var(3).sub(&MPoly::var(2)))
        );
        let ext = extend_model_for_function(&m, &e("1")).unwrap();
        assert!(ext.f[1].is_zero());
    }

    #[test]
    fn inputs_are_rejected() {
        let m = parse_model("params: a\nstates: x\ninputs: u\noutputs: y\nx' = a*x + u\ny = x\n").unwrap();
        let h = parse_expression("u + a", &m).unwrap();
        assert!(matches!(extend_model_for_function(&m, &h), Err(Error::UnsupportedFunction(_))));
    }
}
