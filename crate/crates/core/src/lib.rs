//! Exact and certified computation around the 24-colored partition numbers.
//!
//! The crate computes the coefficient sequence `p24(n)` exactly from its
//! generating product, evaluates its convergent Kloosterman/I-Bessel series
//! representation with rigorous truncation bounds, produces the truncated
//! asymptotic expansion with explicit error constants (all expansion
//! coefficients as exact rational Laurent polynomials in pi), and verifies
//! higher-order log-concavity, Turan, and Laguerre inequalities on the
//! exact sequence.
//!
//! Modules:
//! - [`numerics`]: exact scalars, ball arithmetic, pi-Laurent polynomials;
//! - [`seqcore`]: the exact sequence table and its independent oracle;
//! - [`bessel`]: I-Bessel series and the certified asymptotic envelope;
//! - [`rademacher`]: Kloosterman sums and the convergent exact formula;
//! - [`expansion`]: asymptotic expansion coefficients, error constants, and
//!   a formal-power-series oracle;
//! - [`inequalities`]: inequality operators, Jensen/Sturm hyperbolicity,
//!   and symbolic corollary checks.

pub mod bessel;
pub mod error;
pub mod expansion;
pub mod inequalities;
pub mod numerics;
pub mod rademacher;
pub mod seqcore;

pub use error::{Error, Result};
