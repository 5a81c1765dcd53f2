use crate::arith::{Field, MPoly, Rat};

/// Power series in t known through `t^(len-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rat>,
}

impl TruncSeries {
    pub fn zero(len: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rat::zero(); len],
        }
    }

    pub fn constant(c: Rat, len: usize) -> Self {
        let mut s = Self::zero(len);
        if len > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        TruncSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn set(&mut self, k: usize, c: Rat) {
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    pub fn truncate(&self, len: usize) -> Self {
        TruncSeries {
            coeffs: self.coeffs[..len.min(self.len())].to_vec(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        TruncSeries {
            coeffs: (0..n).map(|k| Field::add(&self.coeffs[k], &o.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        TruncSeries {
            coeffs: (0..n).map(|k| Field::sub(&self.coeffs[k], &o.coeffs[k])).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| Field::mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        let mut out = Self::zero(n);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                let p = Field::mul(&self.coeffs[i], &o.coeffs[j]);
                out.coeffs[i + j] = Field::add(&out.coeffs[i + j], &p);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(Rat::one(), self.len());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self / o`; `None` when the constant term of `o` vanishes.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let n = self.len().min(o.len());
        if n == 0 {
            return Some(Self::zero(0));
        }
        if o.coeffs[0].is_zero() {
            return None;
        }
        let inv0 = o.coeffs[0].inv();
        let mut q: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !o.coeffs[j].is_zero() {
                    acc = Field::sub(&acc, &Field::mul(&o.coeffs[j], &q[k - j]));
                }
            }
            q.push(Field::mul(&acc, &inv0));
        }
        Some(TruncSeries { coeffs: q })
    }

    /// Termwise derivative; one coefficient shorter.
    pub fn derivative(&self) -> Self {
        TruncSeries {
            coeffs: (1..self.len())
                .map(|k| Field::mul(&self.coeffs[k], &Rat::from_integer((k as i64).into())))
                .collect(),
        }
    }

    pub fn derivative_n(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |s, _| s.derivative())
    }
}

/// Evaluates `p` with variable `i` replaced by `values[i]`, truncated to `len`.
pub fn eval_mpoly(p: &MPoly, values: &[TruncSeries], len: usize) -> TruncSeries {
    let mut out = TruncSeries::zero(len);
    for (m, c) in p.terms() {
        let mut t = TruncSeries::constant(c.clone(), len);
        for (i, e) in m.support() {
            t = t.mul(&values[i].truncate(len).pow(e));
        }
        out = out.add(&t);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn s(v: &[i64]) -> TruncSeries {
        TruncSeries::from_coeffs(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn geometric_inverse() {
        let one = TruncSeries::constant(rat(1), 4);
        let q = one.div(&s(&[1, -1, 0, 0])).unwrap();
        assert_eq!(q, s(&[1, 1, 1, 1]));
        assert!(one.div(&s(&[0, 1, 0, 0])).is_none());
    }

    #[test]
    fn products_and_derivatives() {
        let a = s(&[1, 2, 3]);
        assert_eq!(a.mul(&a), s(&[1, 4, 10]));
        assert_eq!(a.derivative(), s(&[2, 6]));
        let half = TruncSeries::from_coeffs(vec![ratio(1, 2), rat(0)]);
        assert_eq!(half.scale(&rat(2)), s(&[1, 0]));
    }
}
