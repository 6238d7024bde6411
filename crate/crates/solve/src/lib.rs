//! Series solvers for operator equations in quotient modules: remainder
//! maps by first-order and graded divisors, successive-correction
//! iteration, accessory-parameter eigenproblems, identity verification,
//! and a small operator expression language.

pub mod biconf;
pub mod dc;
pub mod dsl;
pub mod factor;
pub mod fixtures;
pub mod heun;
pub mod newton;
pub mod realize;
pub mod series;
pub mod tangent;

pub use dmod_core::Error;
