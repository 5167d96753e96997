use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::derivation::method1_coefficient_polys;
use crate::error::SolveError;
use crate::model::{dedup, fmt_complex, invariants, InvariantSet, Instance, Method, Quadruple, Solution};
use crate::oracle::{polish_best_effort, DEDUP_TOL};
use crate::poly::{solve_quartic, EvenQuartic};
use crate::scalar::{rational_to_f64, RealScalar};

/// Coefficients `[w⁴, w³, w², w, 1]` of the elimination quartic, exactly.
pub fn method1_quartic_exact(inv: &InvariantSet<BigRational>) -> [BigRational; 5] {
    let point = [
        BigRational::zero(),
        inv.e1.clone(),
        inv.e3.clone(),
        inv.e4.clone(),
        inv.e1_shift.clone(),
    ];
    method1_coefficient_polys()
        .each_ref()
        .map(|p| p.eval(&point).expect("u-registry point"))
}

/// The elimination quartic in `w = u²`. Floating invariants are converted to
/// rationals exactly and rounded once at the end.
pub fn method1_quartic<T: RealScalar>(inv: &InvariantSet<T>) -> EvenQuartic {
    let exact = |x: &T| x.to_rational().unwrap_or_else(BigRational::zero);
    let inv = InvariantSet {
        e1: exact(&inv.e1),
        e2: exact(&inv.e2),
        e3: exact(&inv.e3),
        e4: exact(&inv.e4),
        e1_shift: exact(&inv.e1_shift),
        half_split: exact(&inv.half_split),
        half_total: exact(&inv.half_total),
        total_minus_2a: exact(&inv.total_minus_2a),
        total_minus_2b: exact(&inv.total_minus_2b),
    };
    let [c8, c6, c4, c2, c0] = method1_quartic_exact(&inv).map(|c| rational_to_f64(&c));
    EvenQuartic { c8, c6, c4, c2, c0 }
}

/// Intermediate quantities of the elimination at a given half-sum `t`.
///
/// `p..s` are the principal `√(t² − aᵢ)`; `pqrs` the coefficients of the
/// shifted quartic in `Y`; `alpha..delta` the elementary symmetric functions
/// of `p..s`.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationQuantities {
    pub t: Complex64,
    pub u: Complex64,
    pub roots: [Complex64; 4],
    pub pqrs: [Complex64; 4],
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
}

impl EliminationQuantities {
    pub fn at(inst: &Instance, t: Complex64) -> Self {
        let roots = inst.0.map(|a| (t * t - a).sqrt());
        let [p, q, r, s] = roots;
        let inv = invariants(&Instance(inst.0.map(|a| Complex64::new(a, 0.0))));
        let t2 = t * t;
        let (a, b, c, d) = (inv.e1, inv.e2, inv.e3, inv.e4);
        EliminationQuantities {
            t,
            u: 2.0 * t,
            roots,
            pqrs: [
                4.0 * t2 - a,
                6.0 * t2 * t2 - 3.0 * a * t2 + b,
                4.0 * t2 * t2 * t2 - 3.0 * a * t2 * t2 + 2.0 * b * t2 - c,
                t2 * t2 * t2 * t2 - a * t2 * t2 * t2 + b * t2 * t2 - c * t2 + d,
            ],
            alpha: p + q + r + s,
            beta: p * q + p * r + p * s + q * r + q * s + r * s,
            gamma: p * q * r + p * q * s + p * r * s + q * r * s,
            delta: p * q * r * s,
        }
    }
}

/// `(u + sign·√(u² − 4a))/2`, evaluated through whichever of the two
/// equivalent forms avoids cancellation.
fn branch_value(u: Complex64, a: f64, sign: f64) -> Complex64 {
    let root = (u * u - 4.0 * a).sqrt();
    let plus = u + sign * root;
    let minus = u - sign * root;
    if plus.norm() >= minus.norm() || minus.norm() == 0.0 {
        plus / 2.0
    } else {
        2.0 * a / minus
    }
}

fn sign_label(mask: usize) -> String {
    (0..4).map(|i| if mask >> i & 1 == 1 { '+' } else { '-' }).collect()
}

/// All quadruples reachable from the elimination quartic.
///
/// Every root `w` gives `u = √w`; each of the 16 sign choices in
/// `vᵢ = (u ∓ √(u² − 4aᵢ))/2` is Newton-polished on the original system and
/// kept if its residual is at most `tol`. Solutions for `−u` are the
/// negations of those for `u` and are appended directly.
pub fn method1_candidates<T: RealScalar>(inst: &Instance<T>, tol: f64) -> Result<Vec<Solution>, SolveError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SolveError::InvalidTolerance(tol));
    }
    let exact = inst.to_exact().ok_or(SolveError::NonFiniteInstance)?;
    let float = inst.to_f64();
    let quartic = method1_quartic(&invariants(&exact));
    let roots = solve_quartic(&quartic.coeffs()).map_err(|_| SolveError::DegenerateElimination)?;

    let mut accepted: Vec<(f64, Solution)> = Vec::new();
    for (k, cluster) in roots.clusters().iter().enumerate() {
        let u = cluster.value.sqrt();
        let mut batch: Vec<(f64, Solution)> = (0..16usize)
            .filter_map(|mask| {
                let q = Quadruple(std::array::from_fn(|i| {
                    let sign = if mask >> i & 1 == 1 { 1.0 } else { -1.0 };
                    branch_value(u, float.0[i], sign)
                }));
                if !q.is_finite() {
                    return None;
                }
                let raw = crate::model::residual(&q, &float);
                let polished = polish_best_effort(&q, &float);
                (polished.residual <= tol).then(|| {
                    let branch = format!("w#{k} u={} signs={}", fmt_complex(u), sign_label(mask));
                    (raw, Solution::new(polished.quadruple, &float, Method::Elimination, branch))
                })
            })
            .collect();
        batch.sort_by(|a, b| a.0.total_cmp(&b.0));
        accepted.extend(batch);
    }

    let forward = dedup(accepted.into_iter().map(|(_, s)| s).collect(), DEDUP_TOL);
    let negated = forward.iter().map(|s| {
        Solution::new(
            s.quadruple.negated(),
            &float,
            Method::Elimination,
            format!("{} (u negated)", s.branch),
        )
    });
    let all = dedup(forward.iter().cloned().chain(negated).collect(), DEDUP_TOL);
    if all.is_empty() {
        Err(SolveError::NoCandidates { method: Method::Elimination })
    } else {
        Ok(all)
    }
}
