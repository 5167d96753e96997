//! Symbolic re-derivation of the elimination polynomials.
//!
//! The roots `a, b, c, d` are encoded by `X⁴ − A X³ + B X² − C X + D`.
//! Shifting `Y = t² − X` gives a quartic in `Y` with roots `t² − aᵢ`, and
//! `Y = Z²` an even octic in `Z` whose roots are `±√(t² − aᵢ)`. Factoring that
//! octic into two quartics with roots `+√(t² − aᵢ)` and `−√(t² − aᵢ)` and using
//! `Σ √(t² − aᵢ) = 2t` pins down the factor coefficients up to one square
//! root. Equating the constant terms and squaring the surd away leaves a
//! polynomial in `t` alone.

use std::collections::{BTreeMap, HashMap};
use std::sync::LazyLock;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::printed;
use crate::poly::{frac, int, MPoly, Registry, SurdExpr};

/// `{t, A, B, C, D}`: half-sum and the elementary symmetric functions.
pub fn t_registry() -> &'static Registry {
    static REG: LazyLock<Registry> = LazyLock::new(|| Registry::new(&["t", "A", "B", "C", "D"]));
    &REG
}

/// `{u, A, C, D, E}` with `u = 2t` and `E = A²/4 − B`.
pub fn u_registry() -> &'static Registry {
    static REG: LazyLock<Registry> = LazyLock::new(|| Registry::new(&["u", "A", "C", "D", "E"]));
    &REG
}

fn work_registry() -> &'static Registry {
    static REG: LazyLock<Registry> =
        LazyLock::new(|| Registry::new(&["X", "Y", "t", "u", "A", "B", "C", "D", "E", "g"]));
    &REG
}

fn w(name: &str) -> MPoly {
    MPoly::var(work_registry(), name).expect("work registry variable")
}

fn wk(c: BigRational) -> MPoly {
    MPoly::constant(work_registry(), c)
}

fn to_t(p: &MPoly) -> MPoly {
    p.reembed(t_registry()).expect("expression lives in {t,A,B,C,D}")
}

/// Coefficients of `Y⁴ − P Y³ + Q Y² − R Y + S`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pqrs {
    pub p: MPoly,
    pub q: MPoly,
    pub r: MPoly,
    pub s: MPoly,
}

/// `X⁴ − A X³ + B X² − C X + D` with `X := t² − Y`, expanded, in the work
/// registry.
pub fn shifted_quartic() -> MPoly {
    let x = w("X");
    let quartic = x.pow(4) - &w("A") * &x.pow(3) + &w("B") * &x.pow(2) - &w("C") * &x + w("D");
    quartic
        .substitute("X", &(w("t").pow(2) - w("Y")))
        .expect("same registry")
}

/// Read `P, Q, R, S` off the shifted quartic.
pub fn build_pqrs() -> Pqrs {
    let shifted = shifted_quartic();
    let coeff = |k| shifted.coeff_of("Y", k).expect("Y is registered");
    assert_eq!(coeff(4), wk(BigRational::one()), "shifted quartic stays monic");
    Pqrs {
        p: to_t(&-coeff(3)),
        q: to_t(&coeff(2)),
        r: to_t(&-coeff(1)),
        s: to_t(&coeff(0)),
    }
}

/// Independent route: expand `Π (Y − (t² − rootᵢ))` over symbolic roots and
/// compare with `Y⁴ − P Y³ + Q Y² − R Y + S` after replacing `A..D` by the
/// elementary symmetric functions of the roots.
pub fn pqrs_matches_root_product(pqrs: &Pqrs) -> bool {
    let reg = Registry::new(&["Y", "t", "a", "b", "c", "d", "A", "B", "C", "D"]);
    let v = |n: &str| MPoly::var(&reg, n).unwrap();
    let roots = ["a", "b", "c", "d"].map(v);
    let t2 = v("t").pow(2);
    let product = roots
        .iter()
        .fold(MPoly::one(&reg), |acc, r| acc * (v("Y") - (&t2 - r)));

    let [a, b, c, d] = roots;
    let sym = [
        ("A", &a + &b + &c + &d),
        ("B", &a * &b + &a * &c + &a * &d + &b * &c + &b * &d + &c * &d),
        ("C", &a * &b * &c + &a * &b * &d + &a * &c * &d + &b * &c * &d),
        ("D", &a * &b * &c * &d),
    ];
    let lift = |p: &MPoly| {
        sym.iter().fold(p.reembed(&reg).unwrap(), |acc, (name, value)| {
            acc.substitute(name, value).unwrap()
        })
    };
    let y = v("Y");
    let assembled = y.pow(4) - &lift(&pqrs.p) * &y.pow(3) + &lift(&pqrs.q) * &y.pow(2)
        - &lift(&pqrs.r) * &y
        + lift(&pqrs.s);
    assembled == product
}

/// Coefficient-by-coefficient check of
/// `(Z⁴ − αZ³ + βZ² − γZ + δ)(Z⁴ + αZ³ + βZ² + γZ + δ) = Z⁸ − PZ⁶ + QZ⁴ − RZ² + S`
/// under `P = α² − 2β`, `Q = β² − 2αγ + 2δ`, `R = γ² − 2βδ`, `S = δ²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationReport {
    /// `(power of Z, holds)` for powers 0..=8.
    pub cells: Vec<(u32, bool)>,
    pub holds: bool,
}

pub fn verify_factorization_relations() -> FactorizationReport {
    let reg = Registry::new(&["Z", "alpha", "beta", "gamma", "delta"]);
    let v = |n: &str| MPoly::var(&reg, n).unwrap();
    let (z, al, be, ga, de) = (v("Z"), v("alpha"), v("beta"), v("gamma"), v("delta"));
    let two = int(2);
    let minus = z.pow(4) - &al * &z.pow(3) + &be * &z.pow(2) - &ga * &z + de.clone();
    let plus = z.pow(4) + &al * &z.pow(3) + &be * &z.pow(2) + &ga * &z + de.clone();
    let product = &minus * &plus;

    let p = al.pow(2) - be.scale(&two);
    let q = be.pow(2) - (&al * &ga).scale(&two) + de.scale(&two);
    let r = ga.pow(2) - (&be * &de).scale(&two);
    let s = de.pow(2);
    let octic = z.pow(8) - &p * &z.pow(6) + &q * &z.pow(4) - &r * &z.pow(2) + s;

    let cells: Vec<(u32, bool)> = (0..=8)
        .map(|k| (k, product.coeff_of("Z", k).unwrap() == octic.coeff_of("Z", k).unwrap()))
        .collect();
    let holds = cells.iter().all(|&(_, ok)| ok) && product == octic;
    FactorizationReport { cells, holds }
}

/// `γ` and `δ` (plus branch of the square root) over `{t, A, B, C, D}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaDelta {
    pub gamma: SurdExpr,
    pub delta: SurdExpr,
}

/// Solve the second and third factor relations for `γ` and `δ` given
/// `α = 2t` and `β = A/2`.
pub fn derive_gamma_delta() -> GammaDelta {
    let pqrs = build_pqrs();
    let lift = |p: &MPoly| p.reembed(work_registry()).unwrap();
    let (q, r) = (lift(&pqrs.q), lift(&pqrs.r));
    let alpha = w("t").scale(&int(2));
    let beta = w("A").scale(&frac(1, 2));
    let gamma = w("g");

    // Q = β² − 2αγ + 2δ, linear in δ.
    let delta_lin = (q - beta.pow(2) + (&alpha * &gamma).scale(&int(2))).scale(&frac(1, 2));
    // R = γ² − 2βδ, quadratic in γ once δ is eliminated.
    let quadratic = gamma.pow(2) - (&beta * &delta_lin).scale(&int(2)) - r;
    assert_eq!(quadratic.degree_in("g").unwrap(), 2);
    let lead = quadratic.coeff_of("g", 2).unwrap().as_constant().expect("constant leading coefficient");
    let c1 = quadratic.coeff_of("g", 1).unwrap().scale(&(BigRational::one() / &lead));
    let c0 = quadratic.coeff_of("g", 0).unwrap().scale(&(BigRational::one() / &lead));

    let gamma_base = c1.scale(&frac(-1, 2));
    let radicand = c1.pow(2).scale(&frac(1, 4)) - c0;
    let d1 = delta_lin.coeff_of("g", 1).unwrap();
    let d0 = delta_lin.coeff_of("g", 0).unwrap();

    let t_one = MPoly::one(t_registry());
    let gamma = SurdExpr::new(to_t(&gamma_base), t_one, to_t(&radicand)).expect("nonzero radicand");
    let delta = SurdExpr::new(to_t(&(d0 + &d1 * &gamma_base)), to_t(&d1), to_t(&radicand))
        .expect("nonzero radicand");
    GammaDelta { gamma, delta }
}

/// `δ² − S` as a surd expression.
pub fn pre_rationalized(gd: &GammaDelta, pqrs: &Pqrs) -> SurdExpr {
    gd.delta.square().add_plain(&-&pqrs.s).expect("same registry")
}

/// Rewrite a polynomial in `{t, A, B, C, D}` with `t = u/2`, `B = A²/4 − E`.
pub fn to_u_form(p: &MPoly) -> MPoly {
    let lifted = p.reembed(work_registry()).unwrap();
    let half_u = w("u").scale(&frac(1, 2));
    let b = w("A").pow(2).scale(&frac(1, 4)) - w("E");
    lifted
        .substitute("t", &half_u)
        .and_then(|p| p.substitute("B", &b))
        .and_then(|p| p.reembed(u_registry()))
        .expect("t and B eliminated")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    /// `derived = ratio · printed`.
    Proportional {
        #[serde(serialize_with = "ser_rational")]
        ratio: BigRational,
    },
    Mismatch {
        #[serde(serialize_with = "ser_opt_rational")]
        ratio: Option<BigRational>,
        /// Indices into [`TableComparison::cells`].
        cells: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellVerdict {
    pub monomial: String,
    #[serde(serialize_with = "ser_rational")]
    pub derived: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub printed: BigRational,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableComparison {
    pub table: &'static str,
    pub verdict: Verdict,
    pub cells: Vec<CellVerdict>,
}

impl TableComparison {
    pub fn is_consistent(&self) -> bool {
        !matches!(self.verdict, Verdict::Mismatch { .. })
    }
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn monomial_name(registry: &Registry, exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(registry.names())
        .filter(|(&k, _)| k > 0)
        .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Compare a derived polynomial with a printed one cell by cell.
///
/// The ratio is the most common `derived/printed` quotient over the printed
/// cells; every cell where `derived ≠ ratio · printed` is listed.
pub fn compare_tables(table: &'static str, derived: &MPoly, printed: &MPoly) -> TableComparison {
    let registry = printed.registry().clone();
    let mut all: BTreeMap<Vec<u32>, (BigRational, BigRational)> = BTreeMap::new();
    for (e, c) in printed.terms() {
        all.entry(e.to_vec()).or_insert((BigRational::zero(), BigRational::zero())).1 = c.clone();
    }
    for (e, c) in derived.terms() {
        all.entry(e.to_vec()).or_insert((BigRational::zero(), BigRational::zero())).0 = c.clone();
    }

    let mut votes: HashMap<BigRational, usize> = HashMap::new();
    for (d, p) in all.values() {
        if !p.is_zero() && !d.is_zero() {
            *votes.entry(d / p).or_default() += 1;
        }
    }
    let ratio = votes
        .into_iter()
        .max_by(|(ra, na), (rb, nb)| na.cmp(nb).then_with(|| rb.cmp(ra)))
        .map(|(r, _)| r);

    let cells: Vec<CellVerdict> = all
        .iter()
        .map(|(e, (d, p))| {
            let matches = match &ratio {
                Some(r) => *d == r * p,
                None => d == p,
            };
            CellVerdict {
                monomial: monomial_name(&registry, e),
                derived: d.clone(),
                printed: p.clone(),
                matches,
            }
        })
        .collect();
    let bad: Vec<usize> = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.matches)
        .map(|(i, _)| i)
        .collect();
    let verdict = match (&ratio, bad.is_empty()) {
        (Some(r), true) if r.is_one() => Verdict::Equal,
        (None, true) => Verdict::Equal,
        (Some(r), true) => Verdict::Proportional { ratio: r.clone() },
        (_, false) => Verdict::Mismatch { ratio, cells: bad },
    };
    TableComparison { table, verdict, cells }
}

/// Everything produced by the symbolic derivation, with printed-table
/// comparisons.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivationReport {
    /// Rationalized polynomial in `{t, A, B, C, D}`.
    pub master_t: MPoly,
    /// The same polynomial in `{u, A, C, D, E}`.
    pub master_u: MPoly,
    pub factorization: FactorizationReport,
    pub pqrs_by_root_product: bool,
    /// No odd power of `t` survives.
    pub even_in_t: bool,
    pub t_degree: u32,
    pub comparisons: Vec<TableComparison>,
}

impl DerivationReport {
    pub fn comparison(&self, table: &str) -> Option<&TableComparison> {
        self.comparisons.iter().find(|c| c.table == table)
    }

    pub fn passed(&self) -> bool {
        self.factorization.holds
            && self.pqrs_by_root_product
            && self.even_in_t
            && self.comparisons.iter().all(TableComparison::is_consistent)
    }
}

pub fn derive_master_octic() -> DerivationReport {
    let reg = t_registry();
    let pqrs = build_pqrs();
    let gd = derive_gamma_delta();
    let delta_sq = gd.delta.square();
    let pre = pre_rationalized(&gd, &pqrs);
    let master_t = pre.rationalize();
    let master_u = to_u_form(&master_t);

    let t_degree = master_t.degree_in("t").unwrap();
    let even_in_t = master_t.terms().all(|(e, _)| e[0] % 2 == 0);

    let pt = |cells| printed::build(reg, cells);
    let comparisons = vec![
        compare_tables("P", &pqrs.p, &pt(printed::P)),
        compare_tables("Q", &pqrs.q, &pt(printed::Q)),
        compare_tables("R", &pqrs.r, &pt(printed::R)),
        compare_tables("S", &pqrs.s, &pt(printed::S)),
        compare_tables("radicand", gd.gamma.radicand(), &pt(printed::RADICAND)),
        compare_tables("gamma_base", gd.gamma.base(), &pt(printed::GAMMA_BASE)),
        compare_tables("delta_base", gd.delta.base(), &pt(printed::DELTA_BASE)),
        compare_tables("delta_surd_coeff", gd.delta.coeff(), &pt(printed::DELTA_COEFF)),
        compare_tables("delta_squared_plain", delta_sq.base(), &pt(printed::DELTA_SQ_PLAIN)),
        compare_tables("delta_squared_surd", delta_sq.coeff(), &pt(printed::SURD_MULTIPLIER)),
        compare_tables("pre_rationalized_plain", pre.base(), &pt(printed::PRE_RATIONALIZED)),
        compare_tables("pre_rationalized_surd", pre.coeff(), &pt(printed::SURD_MULTIPLIER)),
        compare_tables("rationalized_t", &master_t, &pt(printed::RATIONALIZED_T)),
        compare_tables("u_form", &master_u, &printed::build(u_registry(), printed::U_FORM)),
    ];

    DerivationReport {
        pqrs_by_root_product: pqrs_matches_root_product(&pqrs),
        factorization: verify_factorization_relations(),
        master_t,
        master_u,
        even_in_t,
        t_degree,
        comparisons,
    }
}

/// Coefficient polynomials of `w⁴, w³, w², w, 1` (`w = u²`) over
/// `{u, A, C, D, E}`, taken from the derived u-form with denominators
/// cleared.
pub fn method1_coefficient_polys() -> &'static [MPoly; 5] {
    static POLYS: LazyLock<[MPoly; 5]> = LazyLock::new(|| {
        let master_u = derive_master_octic().master_u;
        let lcm = BigRational::from_integer(master_u.denominator_lcm());
        let cleared = master_u.scale(&lcm);
        [8, 6, 4, 2, 0].map(|k| cleared.coeff_of("u", k).expect("u registered"))
    });
    &POLYS
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden_point(t: i64) -> Vec<BigRational> {
        vec![int(t), int(70), int(1773), int(19080), int(72576)]
    }

    #[test]
    fn p_is_four_t_squared_minus_a() {
        let pqrs = build_pqrs();
        let reg = t_registry();
        let expected = MPoly::term(reg, int(4), &[("t", 2)]).unwrap() - MPoly::var(reg, "A").unwrap();
        assert_eq!(pqrs.p, expected);
        assert!(pqrs_matches_root_product(&pqrs));
    }

    #[test]
    fn s_at_golden_point() {
        let pqrs = build_pqrs();
        assert_eq!(pqrs.s.eval(&golden_point(5)).unwrap(), int(576));
        assert_eq!(pqrs.p.eval(&golden_point(5)).unwrap(), int(30));
        assert_eq!(pqrs.q.eval(&golden_point(5)).unwrap(), int(273));
        assert_eq!(pqrs.r.eval(&golden_point(5)).unwrap(), int(820));
    }

    #[test]
    fn pqrs_with_zero_symmetric_functions() {
        let pqrs = build_pqrs();
        let zero_abcd = |p: &MPoly| {
            ["A", "B", "C", "D"]
                .iter()
                .fold(p.clone(), |acc, n| acc.substitute_value(n, &int(0)).unwrap())
        };
        let t = MPoly::var(t_registry(), "t").unwrap();
        assert_eq!(zero_abcd(&pqrs.p), t.pow(2).scale(&int(4)));
        assert_eq!(zero_abcd(&pqrs.q), t.pow(4).scale(&int(6)));
        assert_eq!(zero_abcd(&pqrs.r), t.pow(6).scale(&int(4)));
        assert_eq!(zero_abcd(&pqrs.s), t.pow(8));
    }

    #[test]
    fn factorization_identity_holds() {
        let rep = verify_factorization_relations();
        assert!(rep.holds);
        assert_eq!(rep.cells.len(), 9);
    }

    #[test]
    fn gamma_delta_at_golden_point() {
        let gd = derive_gamma_delta();
        let pt = golden_point(5);
        assert_eq!(gd.gamma.radicand().eval(&pt).unwrap(), int(90000));
        let root = int(300);
        assert_eq!(gd.gamma.eval_with_root(&pt, &root).unwrap(), int(650));
        assert_eq!(gd.gamma.conjugate().eval_with_root(&pt, &root).unwrap(), int(50));
        assert_eq!(gd.delta.conjugate().eval_with_root(&pt, &root).unwrap(), int(24));

        let sq = gd.delta.conjugate().square();
        assert_eq!(sq.base().eval(&pt).unwrap(), int(18_144_576));
        assert_eq!(sq.coeff().eval(&pt).unwrap(), int(-60_480));
        assert_eq!(sq.eval_with_root(&pt, &root).unwrap(), int(576));
    }

    #[test]
    fn master_octic_is_even_of_degree_eight() {
        let rep = derive_master_octic();
        assert!(rep.even_in_t);
        assert_eq!(rep.t_degree, 8);
        assert!(rep.passed(), "{:#?}", rep.comparisons.iter().filter(|c| !c.is_consistent()).collect::<Vec<_>>());
        assert_eq!(rep.comparison("rationalized_t").unwrap().verdict, Verdict::Equal);
        assert_eq!(
            rep.comparison("u_form").unwrap().verdict,
            Verdict::Proportional { ratio: frac(1, 64) }
        );
        let pre = rep.comparison("pre_rationalized_plain").unwrap();
        assert_eq!(pre.verdict, Verdict::Equal);
        // every printed cell is covered
        assert_eq!(rep.comparison("u_form").unwrap().cells.len(), printed::U_FORM.len());
    }

    #[test]
    fn printed_tables_agree_with_each_other_up_to_64() {
        let printed_t = printed::build(t_registry(), printed::RATIONALIZED_T);
        let printed_u = printed::build(u_registry(), printed::U_FORM);
        assert_eq!(to_u_form(&printed_t).scale(&int(64)), printed_u);
        let lead = printed_t.coeff_of("t", 8).unwrap().eval(&golden_point(0)).unwrap();
        assert_eq!(lead, int(-3_651_648));
        let lead_u = printed_u.coeff_of("u", 8).unwrap();
        let at = lead_u.eval(&[int(0), int(70), int(19080), int(72576), int(-548)]).unwrap();
        assert_eq!(at * int(256), int(-233_705_472));
    }

    #[test]
    fn compare_tables_reports_mismatches() {
        let reg = t_registry();
        let t = MPoly::var(reg, "t").unwrap();
        let a = MPoly::var(reg, "A").unwrap();
        let printed = &t.pow(2) + &a;
        let derived = t.pow(2).scale(&int(3)) + a.scale(&int(3)) + MPoly::var(reg, "B").unwrap();
        let cmp = compare_tables("x", &derived, &printed);
        match &cmp.verdict {
            Verdict::Mismatch { ratio, cells } => {
                assert_eq!(ratio.as_ref(), Some(&int(3)));
                assert_eq!(cells.len(), 1);
                assert_eq!(cmp.cells[cells[0]].monomial, "B");
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(compare_tables("y", &printed, &printed).verdict, Verdict::Equal);
    }

    #[test]
    fn method1_coefficients_match_closed_forms() {
        let polys = method1_coefficient_polys();
        let printed_u = printed::build(u_registry(), printed::U_FORM);
        for (p, k) in polys.iter().zip([8, 6, 4, 2, 0]) {
            assert_eq!(p, &printed_u.coeff_of("u", k).unwrap());
        }
    }
}
