use std::fmt;

use num_rational::BigRational;

use super::MPoly;
use crate::error::PolyError;

/// `base + coeff·√radicand` over a common registry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdExpr {
    base: MPoly,
    coeff: MPoly,
    radicand: MPoly,
}

impl SurdExpr {
    pub fn new(base: MPoly, coeff: MPoly, radicand: MPoly) -> Result<Self, PolyError> {
        for other in [&coeff, &radicand] {
            if other.registry() != base.registry() {
                return Err(PolyError::RegistryMismatch {
                    left: base.registry().names().to_vec(),
                    right: other.registry().names().to_vec(),
                });
            }
        }
        if radicand.is_zero() && !coeff.is_zero() {
            return Err(PolyError::ZeroRadicand);
        }
        Ok(SurdExpr { base, coeff, radicand })
    }

    /// A surd-free expression; the radicand is carried only for pairing.
    pub fn plain(base: MPoly, radicand: MPoly) -> Self {
        let coeff = MPoly::zero(base.registry());
        SurdExpr { base, coeff, radicand }
    }

    pub fn base(&self) -> &MPoly {
        &self.base
    }

    pub fn coeff(&self) -> &MPoly {
        &self.coeff
    }

    pub fn radicand(&self) -> &MPoly {
        &self.radicand
    }

    /// The other sign of the square root.
    pub fn conjugate(&self) -> SurdExpr {
        SurdExpr {
            base: self.base.clone(),
            coeff: -&self.coeff,
            radicand: self.radicand.clone(),
        }
    }

    /// `(base² + coeff²·radicand) + (2·base·coeff)·√radicand`.
    pub fn square(&self) -> SurdExpr {
        let plain = &self.base.pow(2) + &(&self.coeff.pow(2) * &self.radicand);
        let two = super::int(2);
        let surd = (&self.base * &self.coeff).scale(&two);
        SurdExpr {
            base: plain,
            coeff: surd,
            radicand: self.radicand.clone(),
        }
    }

    /// Add a surd-free polynomial to the base.
    pub fn add_plain(&self, p: &MPoly) -> Result<SurdExpr, PolyError> {
        Ok(SurdExpr {
            base: self.base.try_add(p)?,
            coeff: self.coeff.clone(),
            radicand: self.radicand.clone(),
        })
    }

    /// Substitute in every part.
    pub fn substitute(&self, name: &str, value: &MPoly) -> Result<SurdExpr, PolyError> {
        SurdExpr::new(
            self.base.substitute(name, value)?,
            self.coeff.substitute(name, value)?,
            self.radicand.substitute(name, value)?,
        )
    }

    /// Isolate the surd and square: `base² − coeff²·radicand`.
    ///
    /// Vanishes wherever either sign of the surd makes the expression vanish.
    pub fn rationalize(&self) -> MPoly {
        &self.base.pow(2) - &(&self.coeff.pow(2) * &self.radicand)
    }

    /// Exact value at `point`, given the chosen value of `√radicand` there.
    pub fn eval_with_root(&self, point: &[BigRational], root: &BigRational) -> Result<BigRational, PolyError> {
        Ok(self.base.eval(point)? + self.coeff.eval(point)? * root)
    }
}

impl fmt::Display for SurdExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "({}) + ({})*sqrt({})", self.base, self.coeff, self.radicand)
        }
    }
}
