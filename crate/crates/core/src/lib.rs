//! Input-output equations and identifiability analysis for rational ODE
//! models with parameters.

pub mod arith;
pub mod diff;
pub mod elim;
pub mod error;
pub mod ident;
pub mod model;
pub mod report;
pub mod series;

pub use error::{Error, Result};
