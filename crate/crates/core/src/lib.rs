//! Recover four numbers `(v, x, y, z)` from the four products
//!
//! ```text
//! v(x+y+z) = a,  x(v+y+z) = b,  y(v+x+z) = c,  z(v+x+y) = d
//! ```
//!
//! Two elimination routes are provided; each is cross-checked against a
//! direct numerical solve and against an exact symbolic re-derivation of the
//! elimination polynomials.
//!
//! * [`elimination`]: the half-sum `t` is eliminated down to an even octic in
//!   `u = 2t`, i.e. a quartic in `w = u²`.
//! * [`differences`]: pairwise differences of the equations reduce the system
//!   to a quartic in `τ = yz`, followed by closed-form back-substitution.
//! * [`oracle`]: a monotone scalar root-find on the half-sum equation, damped
//!   Newton polish on the original system, and cross-method reports.
//! * [`poly`]: exact multivariate polynomials over the rationals, surd
//!   expressions, and a polished quartic solver.

pub mod cli;
pub mod differences;
pub mod elimination;
pub mod error;
pub mod model;
pub mod oracle;
pub mod poly;
pub mod scalar;

pub use error::{PolyError, SolveError};
pub use model::{
    forward_map, invariants, residual, Instance, InvariantSet, Method, Quadruple, Solution,
};
pub use scalar::RealScalar;
