use std::fmt;

use num_rational::BigRational;

use super::{Field, Ring};

/// An element `a + b*lambda` of `Q(lambda)`, where `lambda` is a root of
/// `x^2 - c*x + 1` for a rational trace `c` (so `lambda^-1 = c - lambda`).
///
/// Pure rationals carry no modulus; the modulus is adopted on contact with a
/// `lambda`-element. Mixing two different moduli is a logic error and panics.
#[derive(Clone, Debug)]
pub struct QuadraticRational {
    a: BigRational,
    b: BigRational,
    trace: Option<BigRational>,
}

impl QuadraticRational {
    pub fn rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
            trace: None,
        }
    }

    /// The generator `lambda` with `lambda + lambda^-1 = trace`.
    pub fn generator(trace: BigRational) -> Self {
        Self {
            a: BigRational::zero(),
            b: BigRational::from_int(1),
            trace: Some(trace),
        }
    }

    pub fn parts(&self) -> (&BigRational, &BigRational) {
        (&self.a, &self.b)
    }

    pub fn trace_parameter(&self) -> Option<&BigRational> {
        self.trace.as_ref()
    }

    /// Returns the rational value when the `lambda` part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn merged_trace(&self, rhs: &Self) -> Option<BigRational> {
        match (&self.trace, &rhs.trace) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "mixing quadratic extensions with different moduli");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn build(a: BigRational, b: BigRational, trace: Option<BigRational>) -> Self {
        Self { a, b, trace }
    }

    /// Galois conjugate `lambda -> lambda^-1`.
    pub fn galois_conjugate(&self) -> Self {
        match &self.trace {
            None => self.clone(),
            Some(c) => Self::build(&self.a + &self.b * c, -&self.b, self.trace.clone()),
        }
    }
}

impl PartialEq for QuadraticRational {
    fn eq(&self, other: &Self) -> bool {
        if self.b.is_zero() && other.b.is_zero() {
            return self.a == other.a;
        }
        self.a == other.a && self.b == other.b && self.trace == other.trace
    }
}

impl fmt::Display for QuadraticRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*λ", self.b),
            (false, false) => write!(f, "{} + {}*λ", self.a, self.b),
        }
    }
}

impl Ring for QuadraticRational {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }
    fn one() -> Self {
        Self::rational(BigRational::from_int(1))
    }
    fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::build(&self.a + &rhs.a, &self.b + &rhs.b, self.merged_trace(rhs))
    }
    fn sub(&self, rhs: &Self) -> Self {
        Self::build(&self.a - &rhs.a, &self.b - &rhs.b, self.merged_trace(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        let trace = self.merged_trace(rhs);
        // (a + b L)(x + y L) = ax + (ay + bx) L + by L^2, with L^2 = cL - 1.
        let by = &self.b * &rhs.b;
        let mut a = &self.a * &rhs.a;
        let mut b = &self.a * &rhs.b + &self.b * &rhs.a;
        if !by.is_zero() {
            let c = trace.as_ref().expect("lambda-part without modulus");
            a -= &by;
            b += &by * c;
        }
        Self::build(a, b, trace)
    }
    fn neg(&self) -> Self {
        Self::build(-&self.a, -&self.b, self.trace.clone())
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        if self.b.is_zero() {
            return Some(Self::build(
                self.a.recip(),
                BigRational::zero(),
                self.trace.clone(),
            ));
        }
        // N(a + bL) = (a + bL)(a + b/L) = a^2 + abc + b^2.
        let conj = self.galois_conjugate();
        let norm = self.mul(&conj);
        let n = norm.as_rational()?.clone();
        if n.is_zero() {
            // lambda is rational (c = +-2 or a square discriminant); not a field.
            return None;
        }
        let inv_n = n.recip();
        Some(Self::build(&conj.a * &inv_n, &conj.b * &inv_n, conj.trace))
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        Some(self.mul(&rhs.unit_inverse()?))
    }
}

impl Field for QuadraticRational {}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_int(n)
    }

    #[test]
    fn generator_satisfies_its_quadratic() {
        let lam = QuadraticRational::generator(q(6));
        let lhs = lam
            .mul(&lam)
            .sub(&lam.mul(&QuadraticRational::from_int(6)))
            .add(&QuadraticRational::one());
        assert!(lhs.is_zero());
        let inv = lam.unit_inverse().unwrap();
        assert_eq!(lam.add(&inv), QuadraticRational::from_int(6));
        assert_eq!(lam.mul(&inv), QuadraticRational::one());
    }

    #[test]
    fn inverse_of_general_element() {
        let lam = QuadraticRational::generator(q(3));
        let x = QuadraticRational::from_int(2).add(&lam.mul(&QuadraticRational::from_int(-5)));
        assert_eq!(x.mul(&x.unit_inverse().unwrap()), QuadraticRational::one());
    }
}
