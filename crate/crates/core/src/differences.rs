//! Elimination through pairwise differences.
//!
//! Differences of the equations (`a − b = (v − x)(y + z)`, ...) reduce the
//! system to one quartic in `τ = yz`:
//!
//! ```text
//! 4τ(h + τ)(c + d − 2τ)² = (m − 2τ)(n − 2τ)(c − τ)(d − τ)
//! ```
//!
//! with `h = (a+b−c−d)/2`, `m = b+c+d−a`, `n = a+c+d−b`. Writing
//! `W = cd − (c+d)τ + τ²`, the unknowns follow in closed form:
//!
//! ```text
//! y = (c − τ)√τ/√W      z = (d − τ)√τ/√W
//! v = (n − 2τ)√W / (2(c + d − 2τ)√τ)      x = (m − 2τ)√W / (2(c + d − 2τ)√τ)
//! ```
//!
//! The auxiliary `u2 = dy − cz` equals `(c − d)τ√τ/√W`. The derivation
//! divides by `c − d`, so instances with repeated entries are re-paired.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::SolveError;
use crate::model::{dedup, fmt_complex, residual, Instance, Method, Quadruple, Solution};
use crate::oracle::{polish_best_effort, DEDUP_TOL};
use crate::poly::{frac, int, solve_quartic, MPoly, Registry};
use crate::scalar::{rational_to_f64, RealScalar};

const DEGENERATE_TOL: f64 = 1e-12;

/// Which instance entries play the roles `(a, b, c, d)`:
/// `roles[j]` is the instance index assigned to role `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pairing {
    pub roles: [usize; 4],
}

impl Pairing {
    pub const NATURAL: Pairing = Pairing { roles: [0, 1, 2, 3] };

    /// Natural pairing first, then every other choice of the `(c, d)` pair.
    pub fn all() -> [Pairing; 6] {
        [
            [0, 1, 2, 3],
            [0, 2, 1, 3],
            [0, 3, 1, 2],
            [1, 2, 0, 3],
            [1, 3, 0, 2],
            [2, 3, 0, 1],
        ]
        .map(|roles| Pairing { roles })
    }
}

/// The quartic in `τ = yz`, expanded exactly as `LHS − RHS`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauQuartic {
    /// Highest power first.
    pub coeffs: [BigRational; 5],
    pub pairing: Pairing,
}

impl TauQuartic {
    pub fn to_f64(&self) -> [f64; 5] {
        self.coeffs.each_ref().map(rational_to_f64)
    }

    pub fn eval(&self, tau: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .fold(BigRational::zero(), |acc, c| acc * tau + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Both sides of the τ-equation at a point, in role order.
pub fn tau_sides(role_inst: &Instance<BigRational>, tau: &BigRational) -> (BigRational, BigRational) {
    let [a, b, c, d] = &role_inst.0;
    let two = int(2);
    let h = (a + b - c - d) / &two;
    let m = b + c + d - a;
    let n = a + c + d - b;
    let s = c + d - &two * tau;
    let lhs = int(4) * tau * (&h + tau) * &s * &s;
    let rhs = (&m - &two * tau) * (&n - &two * tau) * (c - tau) * (d - tau);
    (lhs, rhs)
}

pub fn tau_quartic(inst: &Instance<BigRational>, pairing: Pairing) -> TauQuartic {
    let [a, b, c, d] = inst.permuted(pairing.roles).0;
    let reg = Registry::new(&["tau"]);
    let tau = MPoly::var(&reg, "tau").unwrap();
    let k = |r: BigRational| MPoly::constant(&reg, r);
    let two_tau = tau.scale(&int(2));
    let h = (&a + &b - &c - &d) * frac(1, 2);
    let m = &b + &c + &d - &a;
    let n = &a + &c + &d - &b;
    let s = k(&c + &d) - &two_tau;
    let lhs = tau.scale(&int(4)) * (k(h) + &tau) * s.pow(2);
    let rhs = (k(m) - &two_tau) * (k(n) - &two_tau) * (k(c) - &tau) * (k(d) - &tau);
    let diff = lhs - rhs;
    let coeffs = [4, 3, 2, 1, 0].map(|p| {
        diff.coeff_of("tau", p)
            .unwrap()
            .as_constant()
            .expect("univariate")
    });
    TauQuartic { coeffs, pairing }
}

/// Sign of `√τ` used in the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Principal,
    Negated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BackSubstitution {
    pub tau: Complex64,
    /// `dy − cz` on this branch.
    pub u2: Complex64,
    pub branch: Branch,
}

fn w_value(c: f64, d: f64, tau: Complex64) -> Complex64 {
    tau * tau - (c + d) * tau + c * d
}

fn signed_sqrt_tau(tau: Complex64, branch: Branch) -> Complex64 {
    match branch {
        Branch::Principal => tau.sqrt(),
        Branch::Negated => -tau.sqrt(),
    }
}

impl BackSubstitution {
    pub fn new(inst: &Instance, pairing: Pairing, tau: Complex64, branch: Branch) -> Self {
        let [_, _, c, d] = inst.permuted(pairing.roles).0;
        let sqrt_tau = signed_sqrt_tau(tau, branch);
        let u2 = (c - d) * tau * sqrt_tau / w_value(c, d, tau).sqrt();
        BackSubstitution { tau, u2, branch }
    }
}

/// Closed-form `(v, x, y, z)` for one root and branch, in instance order.
pub fn back_substitute(inst: &Instance, pairing: Pairing, bs: &BackSubstitution) -> Result<Quadruple, SolveError> {
    let [a, b, c, d] = inst.permuted(pairing.roles).0;
    let tau = bs.tau;
    let scale = 1.0 + c.abs() + d.abs();
    if tau.norm() <= DEGENERATE_TOL * scale {
        return Err(SolveError::DegenerateDenominator("tau = 0"));
    }
    let w = w_value(c, d, tau);
    if w.norm() <= DEGENERATE_TOL * (scale + tau.norm()).powi(2) {
        return Err(SolveError::DegenerateDenominator("cd - (c+d)tau + tau^2 = 0"));
    }
    let s = c + d - 2.0 * tau;
    if s.norm() <= DEGENERATE_TOL * (scale + tau.norm()) {
        return Err(SolveError::DegenerateDenominator("c + d - 2 tau = 0"));
    }
    let sqrt_tau = signed_sqrt_tau(tau, bs.branch);
    let sqrt_w = w.sqrt();
    let m = b + c + d - a;
    let n = a + c + d - b;
    let y = (c - tau) * sqrt_tau / sqrt_w;
    let z = (d - tau) * sqrt_tau / sqrt_w;
    let v = (n - 2.0 * tau) * sqrt_w / (2.0 * s * sqrt_tau);
    let x = (m - 2.0 * tau) * sqrt_w / (2.0 * s * sqrt_tau);
    Ok(Quadruple([v, x, y, z]).unpermuted(pairing.roles))
}

/// Seed when `c + d − 2τ` vanishes: `y, z` from their closed forms and
/// `v = x = (v + x)/2`, left to Newton.
fn seed_without_v_minus_x(inst: &Instance, pairing: Pairing, tau: Complex64, branch: Branch) -> Option<Quadruple> {
    let [_, _, c, d] = inst.permuted(pairing.roles).0;
    let w = w_value(c, d, tau);
    if w.norm() == 0.0 || tau.norm() == 0.0 {
        return None;
    }
    let sqrt_tau = signed_sqrt_tau(tau, branch);
    let sqrt_w = w.sqrt();
    let y = (c - tau) * sqrt_tau / sqrt_w;
    let z = (d - tau) * sqrt_tau / sqrt_w;
    let half = sqrt_w / sqrt_tau / 2.0;
    Some(Quadruple([half, half, y, z]).unpermuted(pairing.roles))
}

/// All entries equal: `y = z = √τ`, `v = x = (c − τ)/(2√τ)`.
fn symmetric_closed_form(inst: &Instance, pairing: Pairing, tau: Complex64, branch: Branch) -> Option<Quadruple> {
    let c = inst.0[pairing.roles[2]];
    let sqrt_tau = signed_sqrt_tau(tau, branch);
    if sqrt_tau.norm() == 0.0 {
        return None;
    }
    let half = (c - tau) / (2.0 * sqrt_tau);
    Some(Quadruple([half, half, sqrt_tau, sqrt_tau]).unpermuted(pairing.roles))
}

/// `τ = 0` with a zero role entry: the matching unknown vanishes and the
/// other three satisfy `pᵢ(Σp − pᵢ) = rhsᵢ`, solved through the pairwise
/// products `σ − rhsᵢ`.
fn zero_tau_cases(inst: &Instance, pairing: Pairing) -> Vec<Quadruple> {
    let role_inst = inst.permuted(pairing.roles).0;
    let mut out = Vec::new();
    for zero_role in [2usize, 3] {
        if role_inst[zero_role] != 0.0 {
            continue;
        }
        let others: Vec<usize> = (0..4).filter(|&j| j != zero_role).collect();
        let rhs: Vec<f64> = others.iter().map(|&j| role_inst[j]).collect();
        let sigma = rhs.iter().sum::<f64>() / 2.0;
        // products of the two unknowns other than the one paired with rhs[i]
        let prods: Vec<f64> = rhs.iter().map(|r| sigma - r).collect();
        if prods.contains(&0.0) {
            continue;
        }
        let pi = Complex64::new(prods.iter().product::<f64>(), 0.0).sqrt();
        for sign in [1.0, -1.0] {
            let mut role_q = [Complex64::new(0.0, 0.0); 4];
            for (i, &j) in others.iter().enumerate() {
                role_q[j] = sign * pi / prods[i];
            }
            out.push(Quadruple(role_q).unpermuted(pairing.roles));
        }
    }
    out
}

fn branch_label(pairing: Pairing, tau: Complex64, branch: Branch) -> String {
    let sign = match branch {
        Branch::Principal => '+',
        Branch::Negated => '-',
    };
    format!("pairing={:?} tau={} sqrt-tau={sign}", pairing.roles, fmt_complex(tau))
}

struct PairingRun {
    seeds: Vec<(Quadruple, String)>,
    degenerate: bool,
}

fn run_pairing(exact: &Instance<BigRational>, float: &Instance, pairing: Pairing) -> PairingRun {
    let roles = pairing.roles;
    let role_exact = exact.permuted(roles);
    let [_, _, c, d] = &role_exact.0;
    let all_equal = exact.0.iter().all(|e| *e == exact.0[0]);
    let mut degenerate = c == d || c.is_zero() || d.is_zero();

    let tq = tau_quartic(exact, pairing);
    let Ok(roots) = solve_quartic(&tq.to_f64()) else {
        return PairingRun { seeds: Vec::new(), degenerate: true };
    };

    let mut seeds = Vec::new();
    let scale = 1.0 + rational_to_f64(c).abs() + rational_to_f64(d).abs();
    for cluster in roots.clusters() {
        let tau = cluster.value;
        if tau.norm() <= DEGENERATE_TOL * scale {
            degenerate = true;
            for q in zero_tau_cases(float, pairing) {
                seeds.push((q, format!("pairing={roles:?} tau=0 case")));
            }
            continue;
        }
        for branch in [Branch::Principal, Branch::Negated] {
            let label = branch_label(pairing, tau, branch);
            if all_equal {
                if let Some(q) = symmetric_closed_form(float, pairing, tau, branch) {
                    seeds.push((q, format!("{label} symmetric")));
                }
                continue;
            }
            let bs = BackSubstitution::new(float, pairing, tau, branch);
            match back_substitute(float, pairing, &bs) {
                Ok(q) => seeds.push((q, label)),
                Err(SolveError::DegenerateDenominator("c + d - 2 tau = 0")) => {
                    degenerate = true;
                    if let Some(q) = seed_without_v_minus_x(float, pairing, tau, branch) {
                        seeds.push((q, format!("{label} newton-completed")));
                    }
                }
                Err(_) => degenerate = true,
            }
        }
    }
    PairingRun { seeds, degenerate }
}

/// Candidates from the τ-quartic, polished and filtered by residual.
///
/// The natural pairing is tried first; if it hits a degeneracy (equal or
/// zero `c, d`, a vanishing denominator, a zero root) or yields nothing, the
/// remaining pairings are tried as well.
pub fn method2_candidates<T: RealScalar>(inst: &Instance<T>, tol: f64) -> Result<Vec<Solution>, SolveError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SolveError::InvalidTolerance(tol));
    }
    let exact = inst.to_exact().ok_or(SolveError::NonFiniteInstance)?;
    let float = inst.to_f64();

    let mut accepted: Vec<(f64, Solution)> = Vec::new();
    let mut run_all = false;
    for (i, pairing) in Pairing::all().into_iter().enumerate() {
        if i > 0 && !run_all && !accepted.is_empty() {
            break;
        }
        let run = run_pairing(&exact, &float, pairing);
        run_all |= run.degenerate;
        for (seed, label) in run.seeds {
            if !seed.is_finite() {
                continue;
            }
            let raw = residual(&seed, &float);
            let polished = polish_best_effort(&seed, &float);
            if polished.residual <= tol {
                accepted.push((raw, Solution::new(polished.quadruple, &float, Method::Differences, label)));
            }
        }
    }
    accepted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let all = dedup(accepted.into_iter().map(|(_, s)| s).collect(), DEDUP_TOL);
    if all.is_empty() {
        Err(SolveError::NoCandidates { method: Method::Differences })
    } else {
        Ok(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::forward_map;
    use proptest::prelude::*;

    fn golden_exact() -> Instance<BigRational> {
        Instance([9, 16, 21, 24].map(int))
    }

    fn golden() -> Instance {
        Instance::new(9.0, 16.0, 21.0, 24.0)
    }

    fn close(q: &Quadruple, want: [f64; 4], tol: f64) -> bool {
        q.distance(&Quadruple::from_real(want)) <= tol
    }

    #[test]
    fn golden_tau_quartic() {
        let tq = tau_quartic(&golden_exact(), Pairing::NATURAL);
        assert_eq!(tq.coeffs[0], int(12));
        assert!(tq.eval(&int(12)).is_zero());
        assert_eq!(tau_sides(&golden_exact(), &int(12)), (int(42336), int(42336)));
    }

    #[test]
    fn equal_entries_tau_quartic() {
        let inst = Instance([3, 3, 3, 3].map(int));
        let tq = tau_quartic(&inst, Pairing::NATURAL);
        assert!(tq.eval(&int(1)).is_zero());
        assert_eq!(tau_sides(&inst, &int(1)), (int(64), int(64)));
    }

    #[test]
    fn golden_back_substitution() {
        let tau = Complex64::new(12.0, 0.0);
        let bs = BackSubstitution::new(&golden(), Pairing::NATURAL, tau, Branch::Principal);
        let q = back_substitute(&golden(), Pairing::NATURAL, &bs).unwrap();
        assert!(close(&q, [1.0, 2.0, 3.0, 4.0], 1e-14), "{q}");
        // u2 = dy - cz = 24*3 - 21*4
        assert!((bs.u2 - Complex64::new(-12.0, 0.0)).norm() < 1e-12);

        let bs = BackSubstitution::new(&golden(), Pairing::NATURAL, tau, Branch::Negated);
        let q = back_substitute(&golden(), Pairing::NATURAL, &bs).unwrap();
        assert!(close(&q, [-1.0, -2.0, -3.0, -4.0], 1e-14), "{q}");
    }

    #[test]
    fn equal_entries_back_substitution() {
        let inst = Instance::new(3.0, 3.0, 3.0, 3.0);
        let bs = BackSubstitution::new(&inst, Pairing::NATURAL, Complex64::new(1.0, 0.0), Branch::Principal);
        let q = back_substitute(&inst, Pairing::NATURAL, &bs).unwrap();
        assert!(close(&q, [1.0; 4], 1e-14), "{q}");
    }

    #[test]
    fn degenerate_denominators_are_reported() {
        let inst = golden();
        for (tau, what) in [(0.0, "tau = 0"), (21.0, "cd - (c+d)tau + tau^2 = 0"), (22.5, "c + d - 2 tau = 0")] {
            let tau = Complex64::new(tau, 0.0);
            let bs = BackSubstitution { tau, u2: Complex64::new(0.0, 0.0), branch: Branch::Principal };
            assert_eq!(
                back_substitute(&inst, Pairing::NATURAL, &bs),
                Err(SolveError::DegenerateDenominator(what))
            );
        }
    }

    #[test]
    fn golden_candidates() {
        let sols = method2_candidates(&golden(), 1e-9).unwrap();
        assert!(sols.iter().any(|s| close(&s.quadruple, [1.0, 2.0, 3.0, 4.0], 1e-12)));
        assert_eq!(sols.len(), 8, "{sols:#?}");
    }

    #[test]
    fn degenerate_instances() {
        let sols = method2_candidates(&Instance::new(3.0, 3.0, 3.0, 3.0), 1e-9).unwrap();
        assert!(sols.iter().any(|s| close(&s.quadruple, [1.0; 4], 1e-9)));
        let sols = method2_candidates(&Instance::new(0.0, 5.0, 8.0, 9.0), 1e-9).unwrap();
        assert!(sols.iter().any(|s| close(&s.quadruple, [0.0, 1.0, 2.0, 3.0], 1e-9)));
        // c = d forces a re-pairing
        let want = Quadruple::from_real([1.5, 1.6, 2.0, 2.0]);
        let inst_q = forward_map(&want);
        let inst = Instance(inst_q.0.map(|z| z.re));
        let sols = method2_candidates(&inst, 1e-9).unwrap();
        assert!(sols.iter().any(|s| s.quadruple.distance(&want) < 1e-9), "{sols:#?}");
    }

    #[test]
    fn zero_role_entries() {
        // z = 0 forces d = 0 and τ = 0 is a root
        let want = Quadruple::from_real([1.0, 2.0, 3.0, 0.0]);
        let inst = Instance(forward_map(&want).0.map(|z| z.re));
        let sols = method2_candidates(&inst, 1e-9).unwrap();
        assert!(sols.iter().any(|s| s.quadruple.distance(&want) < 1e-9), "{sols:#?}");
    }

    fn positive_rational() -> impl Strategy<Value = BigRational> {
        (1i64..60, 1i64..6).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn tau_quartic_vanishes_at_yz(q in prop::array::uniform4(positive_rational())) {
            let quad = Quadruple(q.clone());
            let inst = forward_map(&quad);
            let [_, _, c, d] = &inst.0;
            let tau = &q[2] * &q[3];
            let w = c * d - (c + d) * &tau + &tau * &tau;
            prop_assume!(c != d && !w.is_zero() && (c + d - int(2) * &tau) != BigRational::zero());
            let tq = tau_quartic(&inst, Pairing::NATURAL);
            prop_assert!(tq.eval(&tau).is_zero());
            prop_assert_eq!(tq.coeffs[0].clone(), int(12));

            let [v, x, y, z] = &q;
            let inv = crate::model::invariants(&inst);
            prop_assert_eq!(&inv.half_total - &inv.half_split, int(2) * y * z + (v + x) * (y + z));
            prop_assert_eq!(&inv.half_total - &inv.half_split, c + d);
            prop_assert!(((d - &tau) * y - (c - &tau) * z).is_zero());
        }

        #[test]
        fn negated_branch_negates(vals in prop::array::uniform4(0.5f64..8.0)) {
            let want = Quadruple::from_real(vals);
            let inst = Instance(forward_map(&want).0.map(|z| z.re));
            prop_assume!((inst.0[2] - inst.0[3]).abs() > 1e-3);
            let tau = want.0[2] * want.0[3];
            let p = BackSubstitution::new(&inst, Pairing::NATURAL, tau, Branch::Principal);
            let n = BackSubstitution::new(&inst, Pairing::NATURAL, tau, Branch::Negated);
            if let (Ok(qp), Ok(qn)) = (back_substitute(&inst, Pairing::NATURAL, &p), back_substitute(&inst, Pairing::NATURAL, &n)) {
                prop_assert!(qp.negated().distance(&qn) < 1e-12);
                prop_assert!((n.u2 + p.u2).norm() <= 1e-9 * (1.0 + p.u2.norm()));
            }
        }
    }
}
