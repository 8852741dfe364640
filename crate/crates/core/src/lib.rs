//! An exact computer-algebra kernel for two-variable q-series, with the
//! Bailey-transform machinery needed to mechanically verify Hecke-Rogers
//! identities for the universal mock theta functions g2, g3 and the
//! lost-notebook function K (through the rank functions R and H).
//!
//! Everything is verified as truncated formal series to a chosen q-order:
//! exact integer arithmetic, no floating point, no analytic arguments. A
//! passing check means the two sides agree coefficient-by-coefficient up to
//! the order — it is evidence, not a proof.
//!
//! Layers, bottom up:
//! - [`series`]: the working ring (half-integer q-grid, integer Laurent
//!   coefficients in z).
//! - [`qproducts`]: finite and infinite q-Pochhammer symbols, Jacobi's triple
//!   product, and Warnaar's generalized triple product.
//! - [`bailey`]: Bailey pairs, conjugate Bailey pairs, the Bailey transform,
//!   the chain step, and the specific pairs driving the catalog.
//! - [`catalog`]: builders for every named series (R, H, K, cleared g2/g3,
//!   Hecke-Rogers double sums, infinite families) and the identity registry.
//! - [`oracle`]: a deliberately naive dense reference implementation used by
//!   the test suite to cross-check the kernel.
//!
//! With the `parallel` feature (default) the convolution, double-sum and
//! batch-verification inner loops run on rayon; without it the crate is fully
//! sequential with no thread dependencies.

pub mod bailey;
pub mod catalog;
mod error;
pub mod exec;
pub mod oracle;
pub mod qproducts;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use report::{Status, VerificationReport};
pub use series::{Comparison, HalfExp, Mismatch, Monomial, QSeries, ZPolynomial};
