use std::sync::Arc;

use super::poly::MPoly;
use crate::error::{Error, Result};

/// Ordered names of the indeterminates of a polynomial ring; index 0 is
/// the most significant variable in every term order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VarList {
    names: Arc<[String]>,
}

impl VarList {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarList {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Fails unless every variable of `p` is declared here.
    pub fn check(&self, p: &MPoly) -> Result<()> {
        match p.max_var() {
            Some(v) if v >= self.len() => Err(Error::Arity(format!(
                "polynomial uses variable {v} but the ring has {} variables",
                self.len()
            ))),
            _ => Ok(()),
        }
    }
}

/// A polynomial tagged with its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPoly {
    pub vars: VarList,
    pub poly: MPoly,
}

impl RingPoly {
    pub fn new(vars: VarList, poly: MPoly) -> Result<Self> {
        vars.check(&poly)?;
        Ok(RingPoly { vars, poly })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    ExactDiv,
}

/// Ring arithmetic with the variable sets checked for agreement.
pub fn poly_arith(op: ArithOp, a: &RingPoly, b: &RingPoly) -> Result<RingPoly> {
    if a.vars != b.vars {
        return Err(Error::Arity(format!(
            "variable sets differ: {:?} vs {:?}",
            a.vars.names(),
            b.vars.names()
        )));
    }
    let poly = match op {
        ArithOp::Add => a.poly.add(&b.poly),
        ArithOp::Mul => a.poly.mul(&b.poly),
        ArithOp::ExactDiv => a.poly.exact_div(&b.poly)?,
    };
    Ok(RingPoly {
        vars: a.vars.clone(),
        poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> VarList {
        VarList::new(["a", "b"])
    }

    fn rp(p: MPoly) -> RingPoly {
        RingPoly::new(ring(), p).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let (a, b) = (MPoly::var(0), MPoly::var(1));
        let one = MPoly::one();
        let s = poly_arith(ArithOp::Add, &rp(&a - &one), &rp(one.clone())).unwrap();
        assert_eq!(s.poly, a);
        let p = poly_arith(ArithOp::Mul, &rp(&a + &b), &rp(&a - &b)).unwrap();
        assert_eq!(p.poly, &a.pow(2) - &b.pow(2));
        let q = poly_arith(ArithOp::ExactDiv, &p, &rp(&a - &b)).unwrap();
        assert_eq!(q.poly, &a + &b);
    }

    #[test]
    fn errors() {
        let (a, b) = (MPoly::var(0), MPoly::var(1));
        assert!(matches!(
            poly_arith(ArithOp::ExactDiv, &rp(a.clone()), &rp(b.clone())),
            Err(Error::Division(_))
        ));
        let other = RingPoly::new(VarList::new(["a"]), a.clone()).unwrap();
        assert!(matches!(poly_arith(ArithOp::Add, &rp(a), &other), Err(Error::Arity(_))));
        assert!(matches!(RingPoly::new(VarList::new(["a"]), b), Err(Error::Arity(_))));
    }
}
