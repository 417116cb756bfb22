//! Exact coefficient rings.
//!
//! Everything in the engine is generic over [`Ring`]. The concrete rings are
//! Laurent polynomials `Z[A, A^-1]`, the rationals, the Gaussian rationals,
//! quadratic extensions of the rationals (for irrational block parameters)
//! and `Complex64`, which only backs tolerance-based unitarity checks.

mod gaussian;
mod laurent;
mod quadratic;
mod value;

pub use gaussian::GaussianRational;
pub use laurent::{LaurentPoly, EXPONENT_LIMIT};
pub use quadratic::QuadraticRational;
pub use value::{delta_of, evaluate_poly, RingTag, RingValue};

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{0} is not a unit in its ring")]
    NotAUnit(String),
    #[error("ring tag mismatch: {left} vs {right}")]
    TagMismatch { left: RingTag, right: RingTag },
    #[error("exponent {0} exceeds the guard of {EXPONENT_LIMIT}")]
    ExponentOutOfRange(i64),
    #[error("cannot parse {kind} from {input:?}")]
    Parse { kind: &'static str, input: String },
}

/// A commutative ring with exact (or, for `Complex64`, IEEE) arithmetic.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The multiplicative inverse, if `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;
    /// `self / rhs` when the quotient exists in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    fn powi(&self, k: i64) -> Option<Self> {
        let k32 = u32::try_from(k.unsigned_abs()).ok()?;
        if k >= 0 {
            Some(self.pow(k32))
        } else {
            Some(self.unit_inverse()?.pow(k32))
        }
    }
}

/// Marker for rings in which every nonzero element is a unit.
pub trait Field: Ring {}

/// Rings carrying a complex conjugation.
pub trait Conjugate: Ring {
    fn conj(&self) -> Self;
    /// Embedding into `Complex64`, for norm and angle reports.
    fn to_complex(&self) -> Complex64;
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!Zero::is_zero(rhs)).then(|| self / rhs)
    }
}

impl Field for BigRational {}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Ring::is_zero(self)).then(|| self.inv())
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!Ring::is_zero(rhs)).then(|| self / rhs)
    }
}

impl Field for Complex64 {}

impl Conjugate for Complex64 {
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge numerators/denominators before dividing.
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer().abs() >> shift).to_f64().unwrap_or(f64::MAX);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::MAX);
            if q.is_negative() {
                -n / d
            } else {
                n / d
            }
        }
    }
}

/// Parses `p`, `-p`, or `p/q` into an exact rational.
pub fn parse_rational(input: &str) -> Result<BigRational, RingError> {
    let err = || RingError::Parse {
        kind: "rational",
        input: input.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| err())?;
    let d: BigInt = den.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_int(3));
        assert_eq!(
            parse_rational(" -6/4 ").unwrap(),
            BigRational::new((-3).into(), 2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn powi_needs_unit_for_negative_exponent() {
        let two = BigRational::from_int(2);
        assert_eq!(two.powi(-2).unwrap(), BigRational::new(1.into(), 4.into()));
        assert!(BigRational::from_int(0).powi(-1).is_none());
    }

    #[test]
    fn huge_rational_to_float() {
        let big = BigRational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((rational_to_f64(&big) - 10.0).abs() < 1e-9);
    }
}
