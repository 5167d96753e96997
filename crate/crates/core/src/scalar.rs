//! Conversions between the floating and exact-rational backends.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// A real scalar that can feed both the floating solve path and the exact
/// coefficient formation.
pub trait RealScalar: Clone + fmt::Debug {
    fn to_f64(&self) -> f64;
    /// Exact rational value; `None` for non-finite floats.
    fn to_rational(&self) -> Option<BigRational>;
}

impl RealScalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}

impl RealScalar for BigRational {
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

/// Nearest double to an arbitrary rational, including values whose numerator
/// and denominator individually overflow `f64`.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(f) = ToPrimitive::to_f64(r) {
        if f.is_finite() {
            return f;
        }
    }
    // Shift both parts down to 64 significant bits, then rescale.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let ns = (nb - 64).max(0);
    let ds = (db - 64).max(0);
    let nf = (n >> ns as usize).to_f64().unwrap_or(f64::NAN);
    let df = (d >> ds as usize).to_f64().unwrap_or(f64::NAN);
    (nf / df) * 2f64.powi((ns - ds) as i32)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a decimal or p/q rational")]
pub struct ParseRationalError(pub String);

/// Parse `p/q`, plain integers, and decimals with an optional exponent
/// (`-1.25e3`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| err())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let joined = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(joined.parse::<BigInt>().map_err(|_| err())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Ok(if negative { -value } else { value })
}
