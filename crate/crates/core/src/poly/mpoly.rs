use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;
use crate::scalar::rational_to_f64;

/// Ordered set of variable names shared by a family of polynomials.
#[derive(Clone)]
pub struct Registry(Arc<Vec<String>>);

impl Registry {
    pub fn new(names: &[&str]) -> Self {
        Registry(Arc::new(names.iter().map(|s| s.to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Result<usize, PolyError> {
        self.0
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

impl PartialEq for Registry {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Registry {}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by dense exponent vectors whose length equals the registry
/// size; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    registry: Registry,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(registry: &Registry) -> Self {
        MPoly {
            registry: registry.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(registry: &Registry, c: BigRational) -> Self {
        let mut p = MPoly::zero(registry);
        if !c.is_zero() {
            p.terms.insert(vec![0; registry.len()], c);
        }
        p
    }

    pub fn one(registry: &Registry) -> Self {
        MPoly::constant(registry, BigRational::one())
    }

    pub fn var(registry: &Registry, name: &str) -> Result<Self, PolyError> {
        let i = registry.index(name)?;
        let mut e = vec![0; registry.len()];
        e[i] = 1;
        Ok(MPoly::monomial(registry, e, BigRational::one()))
    }

    /// `coeff · Π var^exp`, with exponents given by name.
    pub fn term(registry: &Registry, coeff: BigRational, powers: &[(&str, u32)]) -> Result<Self, PolyError> {
        let mut e = vec![0; registry.len()];
        for &(name, k) in powers {
            e[registry.index(name)?] += k;
        }
        Ok(MPoly::monomial(registry, e, coeff))
    }

    fn monomial(registry: &Registry, exponents: Vec<u32>, coeff: BigRational) -> Self {
        let mut p = MPoly::zero(registry);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Constant term if the polynomial has no variables, else `None`.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check(&self, other: &MPoly) -> Result<(), PolyError> {
        if self.registry == other.registry {
            Ok(())
        } else {
            Err(PolyError::RegistryMismatch {
                left: self.registry.names().to_vec(),
                right: other.registry.names().to_vec(),
            })
        }
    }

    fn add_term(&mut self, exponents: Vec<u32>, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut out = MPoly::zero(&self.registry);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigRational) -> MPoly {
        if factor.is_zero() {
            return MPoly::zero(&self.registry);
        }
        MPoly {
            registry: self.registry.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut result = MPoly::one(&self.registry);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn degree_in(&self, name: &str) -> Result<u32, PolyError> {
        let i = self.registry.index(name)?;
        Ok(self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
    }

    /// Total degree (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Coefficient of `var^k`, as a polynomial not involving `var`.
    pub fn coeff_of(&self, name: &str, k: u32) -> Result<MPoly, PolyError> {
        let i = self.registry.index(name)?;
        let mut out = MPoly::zero(&self.registry);
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e = e.clone();
                e[i] = 0;
                out.add_term(e, c.clone());
            }
        }
        Ok(out)
    }

    /// Replace every occurrence of `name` by `value` and re-normalize.
    pub fn substitute(&self, name: &str, value: &MPoly) -> Result<MPoly, PolyError> {
        self.check(value)?;
        let i = self.registry.index(name)?;
        let max_power = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
        let mut powers = vec![MPoly::one(&self.registry)];
        for k in 1..=max_power as usize {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = MPoly::zero(&self.registry);
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut rest = e.clone();
            rest[i] = 0;
            let factor = MPoly::monomial(&self.registry, rest, c.clone());
            let contribution = &factor * &powers[k];
            for (e2, c2) in contribution.terms {
                out.add_term(e2, c2);
            }
        }
        Ok(out)
    }

    /// Substitute a numeric value for one variable.
    pub fn substitute_value(&self, name: &str, value: &BigRational) -> Result<MPoly, PolyError> {
        self.substitute(name, &MPoly::constant(&self.registry, value.clone()))
    }

    /// Move into another registry, matching variables by name.
    pub fn reembed(&self, target: &Registry) -> Result<MPoly, PolyError> {
        let map: Vec<Option<usize>> = self
            .registry
            .names()
            .iter()
            .map(|n| target.index(n).ok())
            .collect();
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (src, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[src] {
                    Some(dst) => ne[dst] += k,
                    None => return Err(PolyError::NotRepresentable(self.registry.names()[src].clone())),
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Evaluate at a point given in registry order.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        if point.len() != self.registry.len() {
            return Err(PolyError::PointArity {
                expected: self.registry.len(),
                got: point.len(),
            });
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Evaluate with named values; unnamed variables must not occur.
    pub fn eval_named(&self, values: &[(&str, BigRational)]) -> Result<BigRational, PolyError> {
        let mut point = vec![BigRational::zero(); self.registry.len()];
        let mut known = vec![false; self.registry.len()];
        for (name, v) in values {
            let i = self.registry.index(name)?;
            point[i] = v.clone();
            known[i] = true;
        }
        for e in self.terms.keys() {
            if let Some(i) = e.iter().enumerate().position(|(i, &k)| k > 0 && !known[i]) {
                return Err(PolyError::NotRepresentable(self.registry.names()[i].clone()));
            }
        }
        self.eval(&point)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, PolyError> {
        if point.len() != self.registry.len() {
            return Err(PolyError::PointArity {
                expected: self.registry.len(),
                got: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(rational_to_f64(c), |acc, (&k, &x)| acc * x.powi(k as i32))
            })
            .sum())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        self.terms
            .values()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl Add for &MPoly {
    type Output = MPoly;

    /// Panics on registry mismatch; use [`MPoly::try_add`] to handle it.
    fn add(self, rhs: &MPoly) -> MPoly {
        self.try_add(rhs).expect("MPoly add")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;

    fn sub(self, rhs: &MPoly) -> MPoly {
        self.try_sub(rhs).expect("MPoly sub")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &MPoly) -> MPoly {
        self.try_mul(rhs).expect("MPoly mul")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        MPoly {
            registry: self.registry.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest total degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().sum();
            let db: u32 = eb.iter().sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let monomial: Vec<String> = e
                .iter()
                .zip(self.registry.names())
                .filter(|(&k, _)| k > 0)
                .map(|(&k, name)| if k == 1 { name.clone() } else { format!("{name}^{k}") })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{mag}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}
