//! Integral Frobenius matrices for abelian surfaces with real multiplication by a
//! real quadratic field of class number one.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: integers, polynomials over Z and Q, finite field towers.
//! - [`quadratic`]: the ring of integers O_E, its ideals and prime labels.
//! - [`frobenius`]: h_p(x) = x^2 - a_p x + s_p, Weil quartics, classification.
//! - [`orders`]: conductors of orders O_E[pi] in S in O_L and the u-search.
//! - [`sigma`]: the integral Frobenius matrix and its checks.
//! - [`jacobian`]: genus-2 curves over F_{p^k}, point counts, Cantor arithmetic.
//! - [`endo`]: deciding which orders lie in End by killing torsion.
//! - [`pipeline`]: fixtures, table rows, rendering and regression diffs.
//!
//! Runnable walk-throughs live in the `examples/` directory of this crate.

pub mod arith;
pub mod endo;
mod error;
pub mod frobenius;
pub mod jacobian;
pub mod orders;
pub mod pipeline;
pub mod quadratic;
pub mod sigma;

pub use error::{Error, Result};
