//! Exact rationals, sparse multivariate polynomials and rational functions.

mod field;
mod gcd;
mod monomial;
mod order;
mod poly;
pub mod print;
mod ratfun;
mod reduce;
mod vars;

pub use field::{denominator_lcm, is_negative, numerator_gcd, rat, ratio, Field, Rat};
pub use gcd::{content, poly_gcd, poly_lcm, primitive_part, pseudo_remainder};
pub use monomial::Monomial;
pub use order::{BlockKind, TermOrder};
pub use poly::{MPoly, Poly};
pub use ratfun::{ratfun_simplify, RatFun};
pub use reduce::{poly_reduce_mod_basis, OrdPoly};
pub use vars::{poly_arith, ArithOp, RingPoly, VarList};
