//! Method-independent checks: the monotone half-sum equation, damped Newton
//! on the original system, and cross-method reports.

use num_complex::Complex64;
use serde::Serialize;

use crate::differences::method2_candidates;
use crate::elimination::method1_candidates;
use crate::error::SolveError;
use crate::model::{forward_map, residual, Instance, Method, Quadruple, Solution};
use crate::scalar::RealScalar;

/// Distance below which two quadruples are the same solution.
pub const DEDUP_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct PolishOutcome {
    pub quadruple: Quadruple,
    pub residual: f64,
    /// Accepted Newton steps.
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("singular Jacobian at the starting point")]
pub struct SingularJacobian {
    pub input: Quadruple,
}

impl SingularJacobian {
    pub fn into_outcome(self, inst: &Instance) -> PolishOutcome {
        PolishOutcome {
            residual: residual(&self.input, inst),
            quadruple: self.input,
            iterations: 0,
        }
    }
}

/// Rows `∂Fᵢ/∂qⱼ` of `Fᵢ(q) = qᵢ·(Σ q − qᵢ) − instᵢ`.
pub fn jacobian(q: &Quadruple) -> [[Complex64; 4]; 4] {
    let total: Complex64 = q.0.iter().sum();
    let mut jac = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (i, row) in jac.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = if i == j { total - q.0[i] } else { q.0[i] };
        }
    }
    jac
}

/// Gaussian elimination with partial pivoting; `None` when singular.
#[allow(clippy::needless_range_loop)]
fn solve4(mut m: [[Complex64; 4]; 4], mut rhs: [Complex64; 4]) -> Option<[Complex64; 4]> {
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    for col in 0..4 {
        let pivot = (col..4).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))?;
        if m[pivot][col].norm() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..4 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                let sub = f * m[col][k];
                m[row][k] -= sub;
            }
            let sub = f * rhs[col];
            rhs[row] -= sub;
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 4];
    for row in (0..4).rev() {
        let mut acc = rhs[row];
        for k in row + 1..4 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

/// Damped Newton on the original four equations.
///
/// Each step is halved until the residual decreases; iteration stops at
/// `tol`, at stagnation, or after `max_iter` steps. The returned iterate is
/// never worse than the input.
pub fn newton_polish(
    q: &Quadruple,
    inst: &Instance,
    max_iter: usize,
    tol: f64,
) -> Result<PolishOutcome, SingularJacobian> {
    let mut best = q.clone();
    let mut best_res = residual(q, inst);
    let mut iterations = 0;
    for it in 0..max_iter.max(1) {
        if best_res <= tol || best_res == 0.0 {
            break;
        }
        let lhs = forward_map(&best);
        let f: [Complex64; 4] = std::array::from_fn(|i| -(lhs.0[i] - inst.0[i]));
        let Some(step) = solve4(jacobian(&best), f) else {
            if it == 0 {
                return Err(SingularJacobian { input: q.clone() });
            }
            break;
        };
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let trial = Quadruple(std::array::from_fn(|i| best.0[i] + step[i] * lambda));
            let r = residual(&trial, inst);
            if r < best_res {
                best = trial;
                best_res = r;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
        iterations += 1;
    }
    Ok(PolishOutcome {
        quadruple: best,
        residual: best_res,
        iterations,
    })
}

/// Polish as far as possible; a singular start is returned unchanged.
pub(crate) fn polish_best_effort(q: &Quadruple, inst: &Instance) -> PolishOutcome {
    newton_polish(q, inst, 60, 0.0).unwrap_or_else(|e| e.into_outcome(inst))
}

/// `g(t) = Σ √(t² − aᵢ) − 2t`, defined for `t² ≥ max aᵢ`.
pub fn half_sum_defect(inst: &Instance, t: f64) -> f64 {
    inst.0.iter().map(|&a| (t * t - a).max(0.0).sqrt()).sum::<f64>() - 2.0 * t
}

/// `g'(t) = Σ t/√(t² − aᵢ) − 2`; infinite where a radicand vanishes.
pub fn half_sum_slope(inst: &Instance, t: f64) -> f64 {
    inst.0
        .iter()
        .map(|&a| {
            let r = (t * t - a).max(0.0).sqrt();
            if r == 0.0 {
                f64::INFINITY
            } else {
                t / r
            }
        })
        .sum::<f64>()
        - 2.0
}

/// Interval `[t₀, hi]` with `t₀ = √max(max aᵢ, 0)` and `g(hi) > 0`.
///
/// For nonnegative entries `g(t) ≥ 2t − A/t`, so `hi` just past `√(A/2)`
/// suffices; the loop doubles until the sign is confirmed.
pub fn bracket(inst: &Instance) -> (f64, f64) {
    let t0 = inst.0.iter().cloned().fold(0.0, f64::max).sqrt();
    let sum: f64 = inst.0.iter().map(|a| a.abs()).sum();
    let mut hi = t0 + (sum / 2.0).sqrt() + f64::EPSILON.max(1e-300);
    hi = hi.max(t0 * (1.0 + 1e-12) + f64::MIN_POSITIVE);
    for _ in 0..2000 {
        if half_sum_defect(inst, hi) > 0.0 {
            break;
        }
        hi = hi * 2.0 + 1.0;
    }
    (t0, hi)
}

/// `t − √(t² − a)` without cancellation.
fn all_minus_entry(t: f64, a: f64) -> f64 {
    let r = (t * t - a).max(0.0).sqrt();
    let den = t + r;
    if den == 0.0 {
        0.0
    } else {
        a / den
    }
}

/// The distinguished real solution `vᵢ = t − √(t² − aᵢ)` of the half-sum
/// equation `Σ √(t² − aᵢ) = 2t`, if it exists.
///
/// With nonnegative entries each `t/√(t² − aᵢ) ≥ 1`, so `g' ≥ 2` and the root
/// is unique; it is located by bisection with Newton acceleration.
pub fn direct_real_solve<T: RealScalar>(inst: &Instance<T>, tol: f64) -> Result<Solution, SolveError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SolveError::InvalidTolerance(tol));
    }
    let inst = inst.to_f64();
    if !inst.is_finite() {
        return Err(SolveError::NonFiniteInstance);
    }
    let (t0, hi) = bracket(&inst);
    let g0 = half_sum_defect(&inst, t0);
    if g0 > 0.0 {
        return Err(SolveError::NoRealAllPositiveBranchSolution);
    }
    let t = if g0 == 0.0 { t0 } else { bisect_newton(&inst, t0, hi) };

    let q = Quadruple::from_real(inst.0.map(|a| all_minus_entry(t, a)));
    let polished = polish_best_effort(&q, &inst);
    // Keep the real branch: Newton on real data stays real unless it stalls.
    let q = if polished.quadruple.is_real(0.0) { polished.quadruple } else { q };
    let res = residual(&q, &inst);
    if res > tol {
        return Err(SolveError::DirectNotConverged { t, residual: res });
    }
    Ok(Solution {
        quadruple: q,
        residual: res,
        method: Method::Direct,
        branch: format!("t={t} all-minus"),
    })
}

fn bisect_newton(inst: &Instance, mut lo: f64, mut hi: f64) -> f64 {
    let mut t = 0.5 * (lo + hi);
    for _ in 0..300 {
        let g = half_sum_defect(inst, t);
        if g == 0.0 {
            return t;
        }
        if g < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        if hi - lo <= 2.0 * f64::EPSILON * hi.abs() {
            break;
        }
        let slope = half_sum_slope(inst, t);
        let newton = t - g / slope;
        t = if slope.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    t
}

/// Outcome of one method inside a cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodOutcome {
    pub method: Method,
    pub solutions: Vec<Solution>,
    /// Set when the method produced nothing.
    pub error: Option<SolveError>,
}

impl MethodOutcome {
    fn from_result(method: Method, r: Result<Vec<Solution>, SolveError>) -> Self {
        match r {
            Ok(solutions) => MethodOutcome { method, solutions, error: None },
            Err(e) => MethodOutcome { method, solutions: Vec::new(), error: Some(e) },
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.solutions.iter().map(|s| s.residual).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Unmatched {
    pub method: Method,
    pub against: Method,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckReport {
    pub outcomes: Vec<MethodOutcome>,
    /// `(method, other, index in method, index in other)` greedy matches.
    pub matches: Vec<(Method, Method, usize, usize)>,
    pub unmatched: Vec<Unmatched>,
    /// The direct method found nothing because no real all-minus branch
    /// exists; this is not a disagreement.
    pub direct_absent_expected: bool,
}

impl CrossCheckReport {
    pub fn outcome(&self, method: Method) -> Option<&MethodOutcome> {
        self.outcomes.iter().find(|o| o.method == method)
    }

    pub fn agrees(&self) -> bool {
        self.unmatched.is_empty()
    }

    /// Union of all method outputs, deduplicated.
    pub fn all_solutions(&self) -> Vec<Solution> {
        crate::model::dedup(
            self.outcomes.iter().flat_map(|o| o.solutions.iter().cloned()).collect(),
            DEDUP_TOL,
        )
    }
}

/// Greedy nearest matching of `left` into `right` within `tol`.
fn greedy_match(left: &[Solution], right: &[Solution], tol: f64) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut used = vec![false; right.len()];
    let mut pairs = Vec::new();
    let mut missing = Vec::new();
    for (i, s) in left.iter().enumerate() {
        let best = right
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, r)| (j, s.quadruple.distance(&r.quadruple)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((j, d)) if d <= tol => {
                used[j] = true;
                pairs.push((i, j));
            }
            _ => missing.push(i),
        }
    }
    (pairs, missing)
}

/// Run every method and match their solution sets.
///
/// The elimination and differences sets are compared in both directions;
/// the direct solution, when present, must appear in each of them.
pub fn cross_check<T: RealScalar>(inst: &Instance<T>, tol: f64) -> CrossCheckReport {
    let elim = MethodOutcome::from_result(Method::Elimination, method1_candidates(inst, tol));
    let diff = MethodOutcome::from_result(Method::Differences, method2_candidates(inst, tol));
    let direct = MethodOutcome::from_result(Method::Direct, direct_real_solve(inst, tol).map(|s| vec![s]));
    let direct_absent_expected = matches!(direct.error, Some(SolveError::NoRealAllPositiveBranchSolution));

    let mut matches = Vec::new();
    let mut unmatched = Vec::new();
    let mut compare = |a: &MethodOutcome, b: &MethodOutcome| {
        let (pairs, missing) = greedy_match(&a.solutions, &b.solutions, DEDUP_TOL);
        matches.extend(pairs.into_iter().map(|(i, j)| (a.method, b.method, i, j)));
        unmatched.extend(missing.into_iter().map(|index| Unmatched {
            method: a.method,
            against: b.method,
            index,
        }));
    };
    compare(&elim, &diff);
    compare(&diff, &elim);
    compare(&direct, &elim);
    compare(&direct, &diff);

    CrossCheckReport {
        outcomes: vec![elim, diff, direct],
        matches,
        unmatched,
        direct_absent_expected,
    }
}
