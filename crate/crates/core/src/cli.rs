//! Command-line front end: `solve`, `verify`, `derive`, `selftest`.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when `solve` finds no
//! solution within the tolerance, 3 when `derive` or `selftest` checks fail.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::differences::{back_substitute, method2_candidates, tau_quartic, tau_sides, BackSubstitution, Branch, Pairing};
use crate::elimination::{
    derive_master_octic, method1_candidates, method1_quartic_exact, DerivationReport, EliminationQuantities,
};
use crate::error::SolveError;
use crate::model::{forward_map, invariants, residual, Instance, Method, Quadruple, Solution};
use crate::oracle::{cross_check, direct_real_solve, CrossCheckReport};
use crate::poly::int;
use crate::scalar::{parse_rational, rational_to_f64};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

const GOLDEN: [i64; 4] = [9, 16, 21, 24];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Elimination,
    Differences,
    Direct,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

fn rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "fourprod", version, about = "Recover v,x,y,z from v(x+y+z)=a, x(v+y+z)=b, y(v+x+z)=c, z(v+x+y)=d")]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
enum CommandArgs {
    /// Solve for all quadruples matching the given products.
    Solve {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        a: BigRational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        b: BigRational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        c: BigRational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        d: BigRational,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodChoice,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Drop solutions with nonzero imaginary parts.
        #[arg(long)]
        real_only: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Apply the forward map to a quadruple, optionally comparing with an instance.
    Verify {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        v: BigRational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        x: BigRational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        y: BigRational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        z: BigRational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, requires_all = ["b", "c", "d"])]
        a: Option<BigRational>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, requires_all = ["a", "c", "d"])]
        b: Option<BigRational>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, requires_all = ["a", "b", "d"])]
        c: Option<BigRational>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, requires_all = ["a", "b", "c"])]
        d: Option<BigRational>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Re-derive the elimination polynomials and compare with the printed tables.
    Derive {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the golden-instance checks.
    Selftest {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// A validated command.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    Solve {
        instance: Instance<BigRational>,
        method: MethodChoice,
        tol: f64,
        real_only: bool,
    },
    Verify {
        quadruple: Quadruple<BigRational>,
        instance: Option<Instance<BigRational>>,
    },
    Derive,
    Selftest,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum UsageError {
    #[error("--tol must be positive and finite, got {0}")]
    Tolerance(f64),
}

impl CliConfig {
    fn from_cli(cli: Cli) -> Result<Self, UsageError> {
        Ok(match cli.command {
            CommandArgs::Solve { a, b, c, d, method, tol, real_only, format } => {
                if !(tol > 0.0 && tol.is_finite()) {
                    return Err(UsageError::Tolerance(tol));
                }
                CliConfig {
                    command: Command::Solve {
                        instance: Instance::new(a, b, c, d),
                        method,
                        tol,
                        real_only,
                    },
                    format,
                }
            }
            CommandArgs::Verify { v, x, y, z, a, b, c, d, format } => {
                let instance = match (a, b, c, d) {
                    (Some(a), Some(b), Some(c), Some(d)) => Some(Instance::new(a, b, c, d)),
                    _ => None,
                };
                CliConfig {
                    command: Command::Verify {
                        quadruple: Quadruple::new(v, x, y, z),
                        instance,
                    },
                    format,
                }
            }
            CommandArgs::Derive { format } => CliConfig { command: Command::Derive, format },
            CommandArgs::Selftest { format } => CliConfig { command: Command::Selftest, format },
        })
    }
}

/// Parse arguments (including the program name) and run.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match CliConfig::from_cli(cli) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &config.command {
        Command::Solve { instance, method, tol, real_only } => {
            solve(instance, *method, *tol, *real_only, config.format, out)
        }
        Command::Verify { quadruple, instance } => verify(quadruple, instance.as_ref(), config.format, out),
        Command::Derive => derive(config.format, out),
        Command::Selftest => selftest(config.format, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn complex_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Debug, Serialize)]
pub struct SolutionJson {
    pub v: [f64; 2],
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub z: [f64; 2],
    pub residual: f64,
    pub method: Method,
    pub branch: String,
}

impl From<&Solution> for SolutionJson {
    fn from(s: &Solution) -> Self {
        let [v, x, y, z] = s.quadruple.0.map(complex_pair);
        SolutionJson {
            v,
            x,
            y,
            z,
            residual: s.residual,
            method: s.method,
            branch: s.branch.clone(),
        }
    }
}

fn instance_json(inst: &Instance) -> Value {
    json!({"a": inst.0[0], "b": inst.0[1], "c": inst.0[2], "d": inst.0[3]})
}

fn status_of(e: &SolveError) -> String {
    e.to_string()
}

fn method_report(outcome: Result<&[Solution], &SolveError>) -> Value {
    match outcome {
        Ok(sols) => json!({
            "status": "ok",
            "count": sols.len(),
            "max_residual": sols.iter().map(|s| s.residual).fold(0.0, f64::max),
        }),
        Err(e) => json!({"status": status_of(e), "count": 0}),
    }
}

fn cross_report(rep: &CrossCheckReport) -> Value {
    let mut methods = serde_json::Map::new();
    for o in &rep.outcomes {
        let r = match &o.error {
            Some(e) => method_report(Err(e)),
            None => method_report(Ok(&o.solutions)),
        };
        methods.insert(o.method.to_string(), r);
    }
    json!({
        "methods": methods,
        "agrees": rep.agrees(),
        "unmatched": rep.unmatched,
        "direct_absent_expected": rep.direct_absent_expected,
    })
}

fn solve(
    exact: &Instance<BigRational>,
    method: MethodChoice,
    tol: f64,
    real_only: bool,
    format: Format,
    out: &mut dyn Write,
) -> std::io::Result<i32> {
    let inst = exact.to_f64();
    let (mut solutions, report, failure) = match method {
        MethodChoice::All => {
            let rep = cross_check(exact, tol);
            let sols: Vec<Solution> = rep.outcomes.iter().flat_map(|o| o.solutions.clone()).collect();
            (sols, cross_report(&rep), None)
        }
        single => {
            let (m, result) = match single {
                MethodChoice::Elimination => (Method::Elimination, method1_candidates(exact, tol)),
                MethodChoice::Differences => (Method::Differences, method2_candidates(exact, tol)),
                _ => (Method::Direct, direct_real_solve(exact, tol).map(|s| vec![s])),
            };
            let report = match &result {
                Ok(s) => json!({"method": m, "result": method_report(Ok(s))}),
                Err(e) => json!({"method": m, "result": method_report(Err(e))}),
            };
            match result {
                Ok(s) => (s, report, None),
                Err(e) => (Vec::new(), report, Some(e)),
            }
        }
    };
    if real_only {
        solutions.retain(|s| s.quadruple.is_real(1e-9));
    }
    let code = if solutions.is_empty() { EXIT_NO_SOLUTION } else { EXIT_OK };
    let status = match (&failure, solutions.is_empty()) {
        (Some(e), _) => status_of(e),
        (None, true) => "no solution within tolerance".to_string(),
        (None, false) => "ok".to_string(),
    };

    match format {
        Format::Json => {
            let doc = json!({
                "instance": instance_json(&inst),
                "solutions": solutions.iter().map(SolutionJson::from).collect::<Vec<_>>(),
                "report": {"status": status, "tol": tol, "real_only": real_only, "details": report},
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Format::Text => {
            writeln!(out, "instance a={} b={} c={} d={}", inst.0[0], inst.0[1], inst.0[2], inst.0[3])?;
            if solutions.is_empty() {
                writeln!(out, "{status}")?;
            }
            for s in &solutions {
                writeln!(out, "{:<12} {}  residual={:.3e}  [{}]", s.method, s.quadruple, s.residual, s.branch)?;
            }
        }
    }
    Ok(code)
}

fn verify(
    q: &Quadruple<BigRational>,
    given: Option<&Instance<BigRational>>,
    format: Format,
    out: &mut dyn Write,
) -> std::io::Result<i32> {
    let image = forward_map(q);
    let image_f = image.to_f64();
    let qf = Quadruple::from_real(q.0.each_ref().map(rational_to_f64));
    let target = given.map(|g| g.to_f64()).unwrap_or_else(|| image_f.clone());
    let res = residual(&qf, &target);
    let exact_match = given.map(|g| *g == image);
    match format {
        Format::Json => {
            let doc = json!({
                "quadruple": {"v": qf.0[0].re, "x": qf.0[1].re, "y": qf.0[2].re, "z": qf.0[3].re},
                "instance": instance_json(&image_f),
                "instance_exact": image.0.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "residual": res,
                "exact_match": exact_match,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Format::Text => {
            let exact: Vec<String> = image.0.iter().map(|r| r.to_string()).collect();
            writeln!(out, "instance ({})", exact.join(", "))?;
            writeln!(out, "residual {res:e}")?;
        }
    }
    Ok(EXIT_OK)
}

fn derivation_json(rep: &DerivationReport) -> Value {
    json!({
        "passed": rep.passed(),
        "t_degree": rep.t_degree,
        "even_in_t": rep.even_in_t,
        "pqrs_by_root_product": rep.pqrs_by_root_product,
        "factorization": rep.factorization,
        "master_t": rep.master_t.to_string(),
        "master_u": rep.master_u.to_string(),
        "comparisons": rep.comparisons,
    })
}

fn derive(format: Format, out: &mut dyn Write) -> std::io::Result<i32> {
    let rep = derive_master_octic();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&derivation_json(&rep)).expect("serializable"))?,
        Format::Text => {
            writeln!(out, "master octic in t (degree {}, even: {}):", rep.t_degree, rep.even_in_t)?;
            writeln!(out, "  {}", rep.master_t)?;
            writeln!(out, "u-form:")?;
            writeln!(out, "  {}", rep.master_u)?;
            writeln!(out, "two-quartic factorization identity: {}", rep.factorization.holds)?;
            writeln!(out, "P,Q,R,S match the root product: {}", rep.pqrs_by_root_product)?;
            for c in &rep.comparisons {
                writeln!(out, "{:<24} {:?}", c.table, c.verdict)?;
                for cell in c.cells.iter().filter(|c| !c.matches) {
                    writeln!(out, "    {}: derived {} printed {}", cell.monomial, cell.derived, cell.printed)?;
                }
            }
        }
    }
    Ok(if rep.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name, passed, detail: detail.into() }
}

/// Golden-instance checks for `(9, 16, 21, 24)`, whose solution is `(1, 2, 3, 4)`.
pub fn selftest_checks() -> Vec<Check> {
    let exact = Instance(GOLDEN.map(int));
    let inst = exact.to_f64();
    let want = Quadruple::from_real([1.0, 2.0, 3.0, 4.0]);
    let found = |r: &Result<Vec<Solution>, SolveError>| match r {
        Ok(s) => s.iter().any(|s| s.quadruple.distance(&want) <= 1e-9 && s.residual <= 1e-9),
        Err(_) => false,
    };
    let mut checks = Vec::new();

    let m1 = method1_candidates(&exact, 1e-9);
    checks.push(check("elimination finds (1,2,3,4)", found(&m1), format!("{} solutions", m1.as_ref().map_or(0, |s| s.len()))));
    let m2 = method2_candidates(&exact, 1e-9);
    checks.push(check("differences finds (1,2,3,4)", found(&m2), format!("{} solutions", m2.as_ref().map_or(0, |s| s.len()))));
    let direct = direct_real_solve(&exact, 1e-9).map(|s| vec![s]);
    checks.push(check("direct finds (1,2,3,4)", found(&direct), ""));

    let eq = EliminationQuantities::at(&inst, Complex64::new(5.0, 0.0));
    let re = |z: Complex64| z.re;
    checks.push(check(
        "square roots at t=5 are 4,3,2,1",
        eq.roots.map(re) == [4.0, 3.0, 2.0, 1.0],
        format!("{:?}", eq.roots.map(re)),
    ));
    checks.push(check(
        "alpha,beta,gamma,delta = 10,35,50,24",
        [eq.alpha, eq.beta, eq.gamma, eq.delta].map(re) == [10.0, 35.0, 50.0, 24.0],
        format!("{:?}", [eq.alpha, eq.beta, eq.gamma, eq.delta].map(re)),
    ));
    checks.push(check("S = delta^2 = 576", eq.pqrs[3].re == 576.0 && eq.delta.re * eq.delta.re == 576.0, ""));

    let coeffs = method1_quartic_exact(&invariants(&exact));
    let expected = [-912912, 84182720, 699099456, 1170854400, 400000000].map(int);
    checks.push(check("elimination quartic coefficients", coeffs == expected, format!("{coeffs:?}")));
    let at_100 = coeffs.iter().fold(int(0), |acc, c| acc * int(100) + c);
    checks.push(check("elimination quartic vanishes at w=100", at_100 == int(0), at_100.to_string()));

    let inv = invariants(&exact);
    checks.push(check(
        "h,k,m,n = -10,35,52,38",
        [&inv.half_split, &inv.half_total, &inv.total_minus_2a, &inv.total_minus_2b] == [&int(-10), &int(35), &int(52), &int(38)],
        "",
    ));
    let (lhs, rhs) = tau_sides(&exact, &int(12));
    checks.push(check("tau=12: both sides 42336", lhs == int(42336) && rhs == int(42336), format!("{lhs} vs {rhs}")));
    let tq = tau_quartic(&exact, Pairing::NATURAL);
    checks.push(check("tau quartic vanishes at 12", tq.eval(&int(12)) == int(0), ""));
    let bs = BackSubstitution::new(&inst, Pairing::NATURAL, Complex64::new(12.0, 0.0), Branch::Principal);
    let back = back_substitute(&inst, Pairing::NATURAL, &bs);
    checks.push(check(
        "back-substitution at tau=12 gives (1,2,3,4)",
        back.as_ref().is_ok_and(|q| q.distance(&want) <= 1e-14),
        format!("{back:?}"),
    ));

    let rep = derive_master_octic();
    checks.push(check("symbolic derivation consistent with printed tables", rep.passed(), ""));
    checks
}

fn selftest(format: Format, out: &mut dyn Write) -> std::io::Result<i32> {
    let checks = selftest_checks();
    let passed = checks.iter().all(|c| c.passed);
    match format {
        Format::Json => {
            let doc = json!({"passed": passed, "checks": checks});
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Format::Text => {
            for c in &checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "[{mark}] {} {}", c.name, c.detail)?;
            }
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}
