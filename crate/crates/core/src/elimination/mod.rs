//! Elimination through the half-sum `t`.
//!
//! With `v + x + y + z = 2t` each unknown satisfies `vᵢ(2t − vᵢ) = aᵢ`, so
//! `vᵢ = t ∓ √(t² − aᵢ)`. Requiring the four choices to add up to `2t` and
//! rationalizing gives an even octic in `u = 2t`, solved here as a quartic in
//! `w = u²`. [`derivation`] rebuilds that octic symbolically; [`method1_candidates`]
//! runs the numeric path.

pub mod derivation;
mod printed;
mod solve;

pub use derivation::{
    build_pqrs, derive_gamma_delta, derive_master_octic, verify_factorization_relations, DerivationReport,
    FactorizationReport, GammaDelta, Pqrs, TableComparison, Verdict,
};
pub use solve::{method1_candidates, method1_quartic, method1_quartic_exact, EliminationQuantities};
