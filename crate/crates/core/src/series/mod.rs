//! Exact truncated power-series solutions of a model at random rational
//! points, evaluation of differential polynomials along them, and
//! Wronskians.

mod trunc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Field, MPoly, Rat, RatFun};
use crate::diff::{differentiate_n, max_order, DiffPoly, DiffRing};
use crate::error::{Error, Result};
use crate::model::Model;

pub use trunc::{eval_mpoly, TruncSeries};

/// Numerators are drawn from [-B, B] and denominators from [1, B].
pub const DEFAULT_BOUND: i64 = 100;
/// Extra draws allowed after a singular or otherwise unusable point.
pub const MAX_RESAMPLES: usize = 10;

/// Seeded source of random rationals.
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: DEFAULT_BOUND,
        }
    }

    pub fn rational(&mut self) -> Rat {
        let n = self.rng.gen_range(-self.bound..=self.bound);
        let d = self.rng.gen_range(1..=self.bound);
        Rat::new(n.into(), d.into())
    }

    /// Parameters, initial state and polynomial inputs of degree `k`.
    pub fn point(&mut self, m: &Model, k: usize, seed: u64) -> SamplePoint {
        let params = (0..m.lambda()).map(|_| self.rational()).collect();
        let x0 = (0..m.n()).map(|_| self.rational()).collect();
        let inputs = (0..m.kappa())
            .map(|_| TruncSeries::from_coeffs((0..=k).map(|_| self.rational()).collect()))
            .collect();
        SamplePoint {
            params,
            x0,
            inputs,
            seed,
        }
    }
}

/// Seed of trial `i` under master seed `master`.
pub fn trial_seed(master: u64, i: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    let mut s = 0;
    for _ in 0..=i {
        s = rng.next_u64();
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    pub params: Vec<Rat>,
    pub x0: Vec<Rat>,
    /// Input functions as polynomials in t (their own Taylor series).
    pub inputs: Vec<TruncSeries>,
    pub seed: u64,
}

impl SamplePoint {
    /// Value of the model denominator at t = 0.
    pub fn q_at_origin(&self, m: &Model) -> Rat {
        let mut point = self.params.clone();
        point.extend(self.x0.iter().cloned());
        point.extend(self.inputs.iter().map(|u| u.coeff(0).clone()));
        m.q.eval(&point)
    }
}

/// Taylor coefficients `0..=order` of a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoint {
    pub order: usize,
    pub params: Vec<Rat>,
    pub x: Vec<TruncSeries>,
    pub y: Vec<TruncSeries>,
    pub u: Vec<TruncSeries>,
}

fn ring_values(m: &Model, params: &[Rat], x: &[TruncSeries], u: &[TruncSeries], len: usize) -> Vec<TruncSeries> {
    let mut vals: Vec<TruncSeries> = params.iter().map(|p| TruncSeries::constant(p.clone(), len)).collect();
    vals.extend(x.iter().map(|s| s.truncate(len)));
    vals.extend(u.iter().map(|s| s.truncate(len)));
    debug_assert_eq!(vals.len(), m.ring().len());
    vals
}

/// Solves `x' = f/Q` order by order: the coefficient of `t^(k+1)` in `x`
/// is that of `t^k` in `f/Q` divided by `k+1`.
pub fn solve_series(m: &Model, p: &SamplePoint, order: usize) -> Result<SeriesPoint> {
    if p.q_at_origin(m).is_zero() {
        return Err(Error::SingularPoint);
    }
    let len = order + 1;
    let u: Vec<TruncSeries> = p
        .inputs
        .iter()
        .map(|s| {
            let mut c = s.coeffs().to_vec();
            c.resize(len, Rat::zero());
            TruncSeries::from_coeffs(c)
        })
        .collect();
    let mut x: Vec<TruncSeries> = p.x0.iter().map(|c| TruncSeries::constant(c.clone(), len)).collect();
    for k in 0..order {
        let vals = ring_values(m, &p.params, &x, &u, k + 1);
        let q = eval_mpoly(&m.q, &vals, k + 1);
        let mut next = Vec::with_capacity(m.n());
        for fi in &m.f {
            let rhs = eval_mpoly(fi, &vals, k + 1).div(&q).ok_or(Error::SingularPoint)?;
            next.push(Field::div(rhs.coeff(k), &Rat::from_integer(((k + 1) as i64).into())));
        }
        for (xi, c) in x.iter_mut().zip(next) {
            xi.set(k + 1, c);
        }
    }
    let vals = ring_values(m, &p.params, &x, &u, len);
    let q = eval_mpoly(&m.q, &vals, len);
    let y = m
        .g
        .iter()
        .map(|gj| eval_mpoly(gj, &vals, len).div(&q).ok_or(Error::SingularPoint))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesPoint {
        order,
        params: p.params.clone(),
        x,
        y,
        u,
    })
}

/// Residuals `Q x' - f` (length `order`) and `Q y - g` (length `order+1`).
pub fn residuals(m: &Model, s: &SeriesPoint) -> Vec<TruncSeries> {
    let len = s.order + 1;
    let vals = ring_values(m, &s.params, &s.x, &s.u, len);
    let q = eval_mpoly(&m.q, &vals, len);
    let mut out = Vec::new();
    for (xi, fi) in s.x.iter().zip(&m.f) {
        let lhs = q.truncate(s.order).mul(&xi.derivative());
        out.push(lhs.sub(&eval_mpoly(fi, &vals, s.order)));
    }
    for (yj, gj) in s.y.iter().zip(&m.g) {
        out.push(q.mul(yj).sub(&eval_mpoly(gj, &vals, len)));
    }
    out
}

/// Rational value of a coefficient at the sampled parameters.
fn eval_coeff(c: &RatFun, params: &[Rat]) -> Result<Rat> {
    let mut point = params.to_vec();
    if let Some(v) = c.max_var() {
        if v >= point.len() {
            // coefficients only involve parameters; pad defensively
            point.resize(v + 1, Rat::zero());
        }
    }
    c.eval(&point).ok_or(Error::SingularPoint)
}

/// Evaluates `f` along `s`; valid through `t^(order - max_order(f))`.
pub fn eval_on_series(f: &DiffPoly, ring: &DiffRing, s: &SeriesPoint) -> Result<TruncSeries> {
    let nb = ring.nbases();
    let top = max_order(f, nb) as usize;
    if s.order < top + 1 {
        return Err(Error::Truncation {
            have: s.order,
            need: top + 1,
        });
    }
    let len = s.order + 1 - top;
    let mut out = TruncSeries::zero(len);
    let mut cache: std::collections::BTreeMap<usize, TruncSeries> = Default::default();
    for (m, c) in f.terms() {
        let mut t = TruncSeries::constant(eval_coeff(c, &s.params)?, len);
        for (i, e) in m.support() {
            let series = cache.entry(i).or_insert_with(|| {
                let v = ring.var_at(i);
                let base = if ring.is_state(v.base) {
                    &s.x[v.base]
                } else if v.base < ring.n_states() + ring.n_outputs() {
                    &s.y[v.base - ring.n_states()]
                } else {
                    &s.u[v.base - ring.n_states() - ring.n_outputs()]
                };
                base.derivative_n(v.order).truncate(len)
            });
            t = t.mul(&series.pow(e));
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// Draws points from `sampler` until the model is regular there and
/// `accept` holds for the parameters, then solves.
pub fn sample_solution(
    m: &Model,
    order: usize,
    seed: u64,
    accept: impl Fn(&[Rat]) -> bool,
) -> Result<SeriesPoint> {
    let mut sampler = Sampler::new(seed);
    for _ in 0..=MAX_RESAMPLES {
        let p = sampler.point(m, order, seed);
        if !accept(&p.params) {
            continue;
        }
        match solve_series(m, &p, order) {
            Ok(s) => return Ok(s),
            Err(Error::SingularPoint) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampling(MAX_RESAMPLES + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Nonzero along the solution drawn with this seed: certainly not in the ideal.
    NotInIdeal { seed: u64 },
    /// Vanished on every sampled solution.
    Undetermined { trials: usize },
}

/// Evaluates `f` on `trials` random solutions truncated at `order`.
pub fn not_in_ideal(f: &DiffPoly, m: &Model, trials: usize, order: usize, master_seed: u64) -> Result<Membership> {
    let ring = m.diff_ring();
    let dens: Vec<MPoly> = f.terms().map(|(_, c)| c.den().clone()).collect();
    for i in 0..trials {
        let seed = trial_seed(master_seed, i);
        let s = sample_solution(m, order, seed, |params| {
            dens.iter().all(|d| !d.eval(&pad(params, d)).is_zero())
        })?;
        if !eval_on_series(f, &ring, &s)?.is_zero() {
            return Ok(Membership::NotInIdeal { seed });
        }
    }
    Ok(Membership::Undetermined { trials })
}

fn pad(params: &[Rat], p: &MPoly) -> Vec<Rat> {
    let mut v = params.to_vec();
    if let Some(k) = p.max_var() {
        if k >= v.len() {
            v.resize(k + 1, Rat::zero());
        }
    }
    v
}

/// Default truncation for testing `f`: its highest derivative order plus 4.
pub fn default_order(f: &DiffPoly, nbases: usize) -> usize {
    max_order(f, nbases) as usize + 4
}

/// `rows x z.len()` matrix with entry (i, j) = δ^i(z_j).
pub fn wronskian(z: &[DiffPoly], rows: usize, nbases: usize) -> Vec<Vec<DiffPoly>> {
    (0..rows)
        .map(|i| z.iter().map(|zj| differentiate_n(zj, i as u32, nbases)).collect())
        .collect()
}

/// Laplace expansion along the first row.
pub fn determinant(mat: &[Vec<DiffPoly>]) -> DiffPoly {
    let n = mat.len();
    match n {
        0 => DiffPoly::one(),
        1 => mat[0][0].clone(),
        _ => {
            let mut det = DiffPoly::zero();
            for j in 0..n {
                if mat[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<DiffPoly>> = mat[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
                    .collect();
                let term = mat[0][j].mul(&determinant(&minor));
                det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
            }
            det
        }
    }
}
