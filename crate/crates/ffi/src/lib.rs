//! C ABI over `fourprod`.
//!
//! Solutions come back in an opaque [`FourprodSolutionSet`] that the caller
//! releases with [`fourprod_solution_set_free`]. Every fallible call returns a
//! [`FourprodStatus`]; outputs are written only on `FOURPROD_STATUS_OK`.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fourprod::differences::method2_candidates;
use fourprod::elimination::{method1_candidates, method1_quartic_exact};
use fourprod::oracle::{cross_check, direct_real_solve};
use fourprod::scalar::rational_to_f64;
use fourprod::{forward_map, invariants, residual, Instance, Method, Quadruple, Solution, SolveError};
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourprodStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NoSolution = 3,
    Degenerate = 4,
    IndexOutOfRange = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourprodMethod {
    Elimination = 0,
    Differences = 1,
    Direct = 2,
    All = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourprodComplex {
    pub re: f64,
    pub im: f64,
}

/// One solution `(v, x, y, z)` with its residual.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourprodSolution {
    pub v: FourprodComplex,
    pub x: FourprodComplex,
    pub y: FourprodComplex,
    pub z: FourprodComplex,
    pub residual: f64,
    pub method: FourprodMethod,
}

/// Opaque list of solutions.
pub struct FourprodSolutionSet {
    solutions: Vec<Solution>,
    branches: Vec<CString>,
}

fn from_complex(z: Complex64) -> FourprodComplex {
    FourprodComplex { re: z.re, im: z.im }
}

fn method_tag(m: Method) -> FourprodMethod {
    match m {
        Method::Elimination => FourprodMethod::Elimination,
        Method::Differences => FourprodMethod::Differences,
        Method::Direct => FourprodMethod::Direct,
    }
}

fn status_of(e: &SolveError) -> FourprodStatus {
    match e {
        SolveError::NoCandidates { .. }
        | SolveError::NoRealAllPositiveBranchSolution
        | SolveError::DirectNotConverged { .. } => FourprodStatus::NoSolution,
        SolveError::DegenerateElimination | SolveError::DegenerateDenominator(_) => FourprodStatus::Degenerate,
        SolveError::InvalidTolerance(_) | SolveError::NonFiniteInstance => FourprodStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> FourprodStatus) -> FourprodStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(FourprodStatus::Internal)
}

impl FourprodMethod {
    fn from_raw(raw: u32) -> Option<Self> {
        [Self::Elimination, Self::Differences, Self::Direct, Self::All].into_iter().find(|m| *m as u32 == raw)
    }
}

fn solve(inst: &Instance, method: FourprodMethod, tol: f64) -> Result<Vec<Solution>, FourprodStatus> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(FourprodStatus::InvalidArgument);
    }
    if !inst.is_finite() {
        return Err(FourprodStatus::InvalidArgument);
    }
    let found = match method {
        FourprodMethod::Elimination => method1_candidates(inst, tol),
        FourprodMethod::Differences => method2_candidates(inst, tol),
        FourprodMethod::Direct => direct_real_solve(inst, tol).map(|s| vec![s]),
        FourprodMethod::All => Ok(cross_check(inst, tol).outcomes.into_iter().flat_map(|o| o.solutions).collect()),
    };
    match found {
        Ok(s) if s.is_empty() => Err(FourprodStatus::NoSolution),
        Ok(s) => Ok(s),
        Err(e) => Err(status_of(&e)),
    }
}

/// Solve for `(v, x, y, z)` given the four products. `method` is a
/// `FourprodMethod` value.
///
/// On success `*out` receives a new set, which must be released with
/// `fourprod_solution_set_free`. On failure `*out` is set to null.
///
/// # Safety
/// `out` must be null or point to writable storage for a pointer.
#[no_mangle]
pub unsafe extern "C" fn fourprod_solve(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    method: u32,
    tol: f64,
    out: *mut *mut FourprodSolutionSet,
) -> FourprodStatus {
    if out.is_null() {
        return FourprodStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let Some(method) = FourprodMethod::from_raw(method) else {
        return FourprodStatus::InvalidArgument;
    };
    guard(|| match solve(&Instance([a, b, c, d]), method, tol) {
        Ok(solutions) => {
            let branches = solutions
                .iter()
                .map(|s| CString::new(s.branch.replace('\0', "")).unwrap_or_default())
                .collect();
            *out = Box::into_raw(Box::new(FourprodSolutionSet { solutions, branches }));
            FourprodStatus::Ok
        }
        Err(status) => status,
    })
}

/// # Safety
/// `set` must come from `fourprod_solve` and not yet be freed; `len` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn fourprod_solution_set_len(set: *const FourprodSolutionSet, len: *mut usize) -> FourprodStatus {
    if set.is_null() || len.is_null() {
        return FourprodStatus::NullPointer;
    }
    *len = (&*set).solutions.len();
    FourprodStatus::Ok
}

/// # Safety
/// `set` must come from `fourprod_solve` and not yet be freed; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn fourprod_solution_set_get(
    set: *const FourprodSolutionSet,
    index: usize,
    out: *mut FourprodSolution,
) -> FourprodStatus {
    if set.is_null() || out.is_null() {
        return FourprodStatus::NullPointer;
    }
    let set = &*set;
    let Some(s) = set.solutions.get(index) else {
        return FourprodStatus::IndexOutOfRange;
    };
    let [v, x, y, z] = s.quadruple.0.map(from_complex);
    *out = FourprodSolution {
        v,
        x,
        y,
        z,
        residual: s.residual,
        method: method_tag(s.method),
    };
    FourprodStatus::Ok
}

/// Branch label of solution `index`, or null. The string lives as long as
/// the set.
///
/// # Safety
/// `set` must be null or come from `fourprod_solve` and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn fourprod_solution_set_branch(set: *const FourprodSolutionSet, index: usize) -> *const c_char {
    if set.is_null() {
        return ptr::null();
    }
    let set = &*set;
    set.branches.get(index).map_or(ptr::null(), |s| s.as_ptr())
}

/// # Safety
/// `set` must be null or come from `fourprod_solve`, and is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn fourprod_solution_set_free(set: *mut FourprodSolutionSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Products `(a, b, c, d)` of a real quadruple.
///
/// # Safety
/// `q` must point to 4 readable doubles and `out` to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fourprod_forward_map(q: *const f64, out: *mut f64) -> FourprodStatus {
    if q.is_null() || out.is_null() {
        return FourprodStatus::NullPointer;
    }
    let q = Quadruple(*(q as *const [f64; 4]));
    *(out as *mut [f64; 4]) = forward_map(&q).0;
    FourprodStatus::Ok
}

/// Maximum relative defect of `q` in the four equations for `inst`.
///
/// # Safety
/// `q` must point to 4 readable complex values, `inst` to 4 readable doubles
/// and `out` to a writable double.
#[no_mangle]
pub unsafe extern "C" fn fourprod_residual(
    q: *const FourprodComplex,
    inst: *const f64,
    out: *mut f64,
) -> FourprodStatus {
    if q.is_null() || inst.is_null() || out.is_null() {
        return FourprodStatus::NullPointer;
    }
    let q = Quadruple((*(q as *const [FourprodComplex; 4])).map(|z| Complex64::new(z.re, z.im)));
    *out = residual(&q, &Instance(*(inst as *const [f64; 4])));
    FourprodStatus::Ok
}

/// Coefficients of `w⁴ … w⁰` of the elimination quartic in `w = (v+x+y+z)²`,
/// formed exactly from the given doubles and rounded once.
///
/// # Safety
/// `inst` must point to 4 readable doubles and `out` to 5 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fourprod_method1_quartic(inst: *const f64, out: *mut f64) -> FourprodStatus {
    if inst.is_null() || out.is_null() {
        return FourprodStatus::NullPointer;
    }
    let Some(exact) = Instance(*(inst as *const [f64; 4])).to_exact() else {
        return FourprodStatus::InvalidArgument;
    };
    guard(|| {
        let coeffs = method1_quartic_exact(&invariants(&exact));
        *(out as *mut [f64; 5]) = coeffs.each_ref().map(rational_to_f64);
        FourprodStatus::Ok
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn fourprod_status_message(status: FourprodStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        FourprodStatus::Ok => b"ok\0",
        FourprodStatus::NullPointer => b"null pointer argument\0",
        FourprodStatus::InvalidArgument => b"invalid argument\0",
        FourprodStatus::NoSolution => b"no solution within tolerance\0",
        FourprodStatus::Degenerate => b"degenerate instance\0",
        FourprodStatus::IndexOutOfRange => b"index out of range\0",
        FourprodStatus::Internal => b"internal error\0",
    };
    text.as_ptr().cast()
}
