//! Exact polynomial arithmetic and numeric root extraction.

mod mpoly;
mod quartic;
mod surd;

pub use mpoly::{MPoly, Registry};
pub use quartic::{roots_of_even_octic, solve_quartic, EvenQuartic, QuarticRoots, RootCluster};
pub use surd::SurdExpr;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
