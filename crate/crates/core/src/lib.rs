//! Polynomial solutions of first-order difference equations
//! `a·σ(g) + b·g = f` in the bivariate difference field `(F(α, β), σ)` with
//! `σ(α) = β` and `σ(β) = uα + vβ`, and the telescoping identities they give
//! for sums over order-two C-finite sequences.

pub mod bipoly;
pub mod cli;
pub mod difffield;
pub mod error;
pub mod parse;
pub mod qfield;
pub mod report;
pub mod solver;
pub mod spread;
pub mod telescope;

pub use error::{Error, ParseError, Result};
