//! Domain types, the forward map, derived invariants and residuals.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::scalar::RealScalar;

/// Right-hand sides `(a, b, c, d)`; entry `i` pairs with unknown `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T = f64>(pub [T; 4]);

impl<T> Instance<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Instance([a, b, c, d])
    }

    pub fn entries(&self) -> &[T; 4] {
        &self.0
    }

    /// Entry order given by `roles`: `result[j] = self[roles[j]]`.
    pub fn permuted(&self, roles: [usize; 4]) -> Self
    where
        T: Clone,
    {
        Instance(roles.map(|i| self.0[i].clone()))
    }
}

impl<T: RealScalar> Instance<T> {
    pub fn to_f64(&self) -> Instance<f64> {
        Instance(self.0.clone().map(|x| x.to_f64()))
    }

    /// Exact rational image; `None` if any entry is not finite.
    pub fn to_exact(&self) -> Option<Instance<BigRational>> {
        let [a, b, c, d] = &self.0;
        Some(Instance([
            a.to_rational()?,
            b.to_rational()?,
            c.to_rational()?,
            d.to_rational()?,
        ]))
    }
}

impl Instance<f64> {
    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Instance(self.0.map(|x| x * factor))
    }
}

/// Candidate unknowns `(v, x, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadruple<T = Complex64>(pub [T; 4]);

impl<T> Quadruple<T> {
    pub fn new(v: T, x: T, y: T, z: T) -> Self {
        Quadruple([v, x, y, z])
    }
}

impl Quadruple<Complex64> {
    pub fn from_real(values: [f64; 4]) -> Self {
        Quadruple(values.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn negated(&self) -> Self {
        Quadruple(self.0.map(|x| -x))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Quadruple(self.0.map(|x| x * factor))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Inverse of [`Instance::permuted`]: `result[roles[j]] = self[j]`.
    pub fn unpermuted(&self, roles: [usize; 4]) -> Self {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (j, &i) in roles.iter().enumerate() {
            out[i] = self.0[j];
        }
        Quadruple(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Imaginary parts small relative to `1 + max |coordinate|`.
    pub fn is_real(&self, tol: f64) -> bool {
        let scale = 1.0 + self.max_abs();
        self.0.iter().all(|z| z.im.abs() <= tol * scale)
    }

    /// Max coordinate distance relative to `1 + max |coordinate|`.
    pub fn distance(&self, other: &Self) -> f64 {
        let diff = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(p, q)| (p - q).norm())
            .fold(0.0, f64::max);
        diff / (1.0 + self.max_abs().max(other.max_abs()))
    }
}

/// Short form of a complex number with parts below `1e-12 |z|` dropped.
pub fn fmt_complex(z: Complex64) -> String {
    let cut = 1e-12 * z.norm();
    let re = if z.re.abs() <= cut { 0.0 } else { z.re };
    let im = if z.im.abs() <= cut { 0.0 } else { z.im };
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        (false, false) => format!("{re}{im:+}i"),
    }
}

impl fmt::Display for Quadruple<Complex64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|z| fmt_complex(*z))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Elimination,
    Differences,
    Direct,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Elimination => "elimination",
            Method::Differences => "differences",
            Method::Direct => "direct",
        })
    }
}

/// An accepted quadruple together with how it was found.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub quadruple: Quadruple,
    pub residual: f64,
    pub method: Method,
    /// Sign pattern or root index that produced the candidate.
    pub branch: String,
}

impl Solution {
    pub fn new(quadruple: Quadruple, inst: &Instance, method: Method, branch: String) -> Self {
        let residual = residual(&quadruple, inst);
        Solution {
            quadruple,
            residual,
            method,
            branch,
        }
    }
}

/// Scalars derived from an instance.
///
/// `e1..e4` are the elementary symmetric functions of the entries (the
/// coefficients of the monic quartic whose roots are `a, b, c, d`).
/// `e1_shift = e1²/4 − e2`. The remaining fields feed the differences method:
/// `half_split = (a+b−c−d)/2`, `half_total = (a+b+c+d)/2`,
/// `total_minus_2a = b+c+d−a`, `total_minus_2b = a+c+d−b`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantSet<T = f64> {
    pub e1: T,
    pub e2: T,
    pub e3: T,
    pub e4: T,
    pub e1_shift: T,
    pub half_split: T,
    pub half_total: T,
    pub total_minus_2a: T,
    pub total_minus_2b: T,
}

/// `(v(x+y+z), x(v+y+z), y(v+x+z), z(v+x+y))`.
pub fn forward_map<T: Num + Clone>(q: &Quadruple<T>) -> Instance<T> {
    let [v, x, y, z] = q.0.clone();
    Instance([
        v.clone() * (x.clone() + y.clone() + z.clone()),
        x.clone() * (v.clone() + y.clone() + z.clone()),
        y.clone() * (v.clone() + x.clone() + z.clone()),
        z * (v + x + y),
    ])
}

pub fn invariants<T: Num + Clone>(inst: &Instance<T>) -> InvariantSet<T> {
    let [a, b, c, d] = inst.0.clone();
    let two = T::one() + T::one();
    let four = two.clone() + two.clone();
    let e1 = a.clone() + b.clone() + c.clone() + d.clone();
    let e2 = a.clone() * b.clone()
        + a.clone() * c.clone()
        + a.clone() * d.clone()
        + b.clone() * c.clone()
        + b.clone() * d.clone()
        + c.clone() * d.clone();
    let e3 = a.clone() * b.clone() * c.clone()
        + a.clone() * b.clone() * d.clone()
        + a.clone() * c.clone() * d.clone()
        + b.clone() * c.clone() * d.clone();
    let e4 = a.clone() * b.clone() * c.clone() * d.clone();
    let e1_shift = e1.clone() * e1.clone() / four - e2.clone();
    let half_split = (a.clone() + b.clone() - c.clone() - d.clone()) / two.clone();
    let half_total = e1.clone() / two;
    let total_minus_2a = b.clone() + c.clone() + d.clone() - a.clone();
    let total_minus_2b = a + c + d - b;
    InvariantSet {
        e1,
        e2,
        e3,
        e4,
        e1_shift,
        half_split,
        half_total,
        total_minus_2a,
        total_minus_2b,
    }
}

/// Max over the four equations of `|lhs − rhs| / (1 + |rhs|)`.
pub fn residual(q: &Quadruple, inst: &Instance) -> f64 {
    let lhs = forward_map(q);
    lhs.0
        .iter()
        .zip(inst.0.iter())
        .map(|(l, &r)| (l - r).norm() / (1.0 + r.abs()))
        .fold(0.0, |acc, x| if x.is_nan() { f64::NAN } else { acc.max(x) })
}

/// Drop solutions within `threshold` (see [`Quadruple::distance`]) of an
/// earlier one; order is preserved.
pub fn dedup(solutions: Vec<Solution>, threshold: f64) -> Vec<Solution> {
    let mut kept: Vec<Solution> = Vec::with_capacity(solutions.len());
    for s in solutions {
        if !kept
            .iter()
            .any(|k| k.quadruple.distance(&s.quadruple) <= threshold)
        {
            kept.push(s);
        }
    }
    kept
}
