use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

use super::{GaussianRational, LaurentPoly, Ring, RingError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingTag {
    Laurent,
    Rational,
    Gaussian,
    Complex,
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingTag::Laurent => "laurent",
            RingTag::Rational => "rational",
            RingTag::Gaussian => "gaussian",
            RingTag::Complex => "complex",
        })
    }
}

/// A ring element tagged with the ring it lives in.
///
/// Arithmetic is only defined between values of the same tag. The complex
/// tag compares through [`RingValue::approx_eq`].
#[derive(Debug, Clone, PartialEq)]
pub enum RingValue {
    Laurent(LaurentPoly),
    Rational(BigRational),
    Gaussian(GaussianRational),
    Complex(Complex64),
}

macro_rules! same_tag {
    ($l:expr, $r:expr, |$a:ident, $b:ident| $body:expr) => {
        match ($l, $r) {
            (RingValue::Laurent($a), RingValue::Laurent($b)) => Ok(RingValue::Laurent($body)),
            (RingValue::Rational($a), RingValue::Rational($b)) => Ok(RingValue::Rational($body)),
            (RingValue::Gaussian($a), RingValue::Gaussian($b)) => Ok(RingValue::Gaussian($body)),
            (RingValue::Complex($a), RingValue::Complex($b)) => Ok(RingValue::Complex($body)),
            (l, r) => Err(RingError::TagMismatch {
                left: l.tag(),
                right: r.tag(),
            }),
        }
    };
}

impl RingValue {
    /// The symbolic indeterminate `A` of `Z[A, A^-1]`.
    pub fn symbolic_a() -> Self {
        RingValue::Laurent(LaurentPoly::a())
    }

    pub fn tag(&self) -> RingTag {
        match self {
            RingValue::Laurent(_) => RingTag::Laurent,
            RingValue::Rational(_) => RingTag::Rational,
            RingValue::Gaussian(_) => RingTag::Gaussian,
            RingValue::Complex(_) => RingTag::Complex,
        }
    }

    pub fn from_int(tag: RingTag, n: i64) -> Self {
        match tag {
            RingTag::Laurent => RingValue::Laurent(LaurentPoly::from_int(n)),
            RingTag::Rational => RingValue::Rational(BigRational::from_int(n)),
            RingTag::Gaussian => RingValue::Gaussian(GaussianRational::from_int(n)),
            RingTag::Complex => RingValue::Complex(Complex64::from_int(n)),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, RingError> {
        same_tag!(self, rhs, |a, b| Ring::add(a, b))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, RingError> {
        same_tag!(self, rhs, |a, b| Ring::sub(a, b))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, RingError> {
        same_tag!(self, rhs, |a, b| Ring::mul(a, b))
    }

    pub fn neg(&self) -> Self {
        match self {
            RingValue::Laurent(a) => RingValue::Laurent(Ring::neg(a)),
            RingValue::Rational(a) => RingValue::Rational(Ring::neg(a)),
            RingValue::Gaussian(a) => RingValue::Gaussian(Ring::neg(a)),
            RingValue::Complex(a) => RingValue::Complex(Ring::neg(a)),
        }
    }

    pub fn inverse(&self) -> Result<Self, RingError> {
        let inv = match self {
            RingValue::Laurent(a) => a.unit_inverse().map(RingValue::Laurent),
            RingValue::Rational(a) => Ring::unit_inverse(a).map(RingValue::Rational),
            RingValue::Gaussian(a) => a.unit_inverse().map(RingValue::Gaussian),
            RingValue::Complex(a) => Ring::unit_inverse(a).map(RingValue::Complex),
        };
        inv.ok_or_else(|| RingError::NotAUnit(self.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Laurent(a) => a.is_zero(),
            RingValue::Rational(a) => Ring::is_zero(a),
            RingValue::Gaussian(a) => Ring::is_zero(a),
            RingValue::Complex(a) => Ring::is_zero(a),
        }
    }

    /// Equality with a tolerance on the complex tag; exact on the others.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> Result<bool, RingError> {
        match (self, other) {
            (RingValue::Complex(a), RingValue::Complex(b)) => Ok((a - b).norm() <= tol),
            (l, r) if l.tag() == r.tag() => Ok(l == r),
            (l, r) => Err(RingError::TagMismatch {
                left: l.tag(),
                right: r.tag(),
            }),
        }
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingValue::Laurent(a) => write!(f, "{a}"),
            RingValue::Rational(a) => write!(f, "{a}"),
            RingValue::Gaussian(a) => write!(f, "{a}"),
            RingValue::Complex(a) => write!(f, "{a}"),
        }
    }
}

/// The loop value `-A^2 - A^-2` computed in the ring of `a`.
pub fn delta_of(tag: RingTag, a: &RingValue) -> Result<RingValue, RingError> {
    if a.tag() != tag {
        return Err(RingError::TagMismatch {
            left: tag,
            right: a.tag(),
        });
    }
    let a_inv = a.inverse()?;
    let a2 = a.mul(a)?;
    let a_inv2 = a_inv.mul(&a_inv)?;
    Ok(a2.add(&a_inv2)?.neg())
}

/// Substitutes `a` for the indeterminate; a ring homomorphism into `a`'s ring.
pub fn evaluate_poly(p: &LaurentPoly, a: &RingValue) -> Result<RingValue, RingError> {
    let a_inv = a.inverse()?;
    Ok(match (a, &a_inv) {
        (RingValue::Laurent(x), RingValue::Laurent(xi)) => {
            RingValue::Laurent(p.evaluate_with(x, xi))
        }
        (RingValue::Rational(x), RingValue::Rational(xi)) => {
            RingValue::Rational(p.evaluate_with(x, xi))
        }
        (RingValue::Gaussian(x), RingValue::Gaussian(xi)) => {
            RingValue::Gaussian(p.evaluate_with(x, xi))
        }
        (RingValue::Complex(x), RingValue::Complex(xi)) => {
            RingValue::Complex(p.evaluate_with(x, xi))
        }
        _ => unreachable!("inverse preserves the tag"),
    })
}
