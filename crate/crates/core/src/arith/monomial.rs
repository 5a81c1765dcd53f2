use std::cmp::Ordering;

/// Exponent vector of a power product.
///
/// Trailing zero exponents are never stored, so two monomials compare equal
/// exactly when they denote the same power product regardless of how many
/// variables the surrounding ring declares. Index 0 is the most significant
/// variable. `Ord` is graded lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = exp;
        Self::from_exps(exps)
    }

    pub fn from_exps(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps.get(index).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Indices of variables with positive exponent, ascending.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn max_var(&self) -> Option<usize> {
        if self.exps.is_empty() {
            None
        } else {
            Some(self.exps.len() - 1)
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (e, s) in exps.iter_mut().zip(&short.exps) {
            *e += s;
        }
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() <= other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, if exact.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        let mut exps = self.exps.clone();
        for (e, d) in exps.iter_mut().zip(&divisor.exps) {
            *e -= d;
        }
        Some(Self::from_exps(exps))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        Monomial {
            exps: (0..n).map(|i| self.exp(i).max(other.exp(i))).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().min(other.exps.len());
        Self::from_exps((0..n).map(|i| self.exp(i).min(other.exp(i))).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    pub fn with_exp(&self, index: usize, exp: u32) -> Monomial {
        let mut exps = self.exps.clone();
        if exps.len() <= index {
            exps.resize(index + 1, 0);
        }
        exps[index] = exp;
        Self::from_exps(exps)
    }

    /// Renumber variables; `map` must be injective on the support.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Monomial {
        let mut exps = Vec::new();
        for (i, e) in self.support() {
            let j = map(i);
            if exps.len() <= j {
                exps.resize(j + 1, 0);
            }
            exps[j] += e;
        }
        Self::from_exps(exps)
    }

    /// Lexicographic comparison, variable 0 most significant.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        // Trailing zeros are trimmed, so slice order coincides with padded order.
        self.exps.as_slice().cmp(other.exps.as_slice())
    }

    /// Reverse lexicographic tie-break of graded reverse lexicographic order.
    pub fn cmp_revlex_tail(&self, other: &Monomial) -> Ordering {
        let n = self.exps.len().max(other.exps.len());
        for i in (0..n).rev() {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.cmp_lex(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(Monomial::from_exps(vec![1, 0, 0]), Monomial::var(0, 1));
        assert!(Monomial::from_exps(vec![0, 0]).is_one());
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let x = Monomial::var(0, 1);
        let y2 = Monomial::var(1, 2);
        let xy = Monomial::from_exps(vec![1, 1]);
        assert!(y2 > x);
        assert!(xy.cmp_lex(&y2) == Ordering::Greater);
        assert!(xy > y2);
    }

    #[test]
    fn division_and_lcm() {
        let a = Monomial::from_exps(vec![2, 1]);
        let b = Monomial::from_exps(vec![1, 0, 3]);
        assert_eq!(a.lcm(&b), Monomial::from_exps(vec![2, 1, 3]));
        assert_eq!(a.gcd(&b), Monomial::var(0, 1));
        assert_eq!(a.div(&Monomial::var(0, 1)), Some(Monomial::from_exps(vec![1, 1])));
        assert_eq!(a.div(&b), None);
    }
}
