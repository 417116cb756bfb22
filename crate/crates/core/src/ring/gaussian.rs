use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use super::{parse_rational, rational_to_f64, Conjugate, Field, Ring, RingError};

/// An element `re + im*i` of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_int(re), BigRational::from_int(im))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Parses `a`, `bi`, `a+bi`, `a - b i`, `i`, `-i` with rational `a`, `b`.
    pub fn parse(input: &str) -> Result<Self, RingError> {
        let err = || RingError::Parse {
            kind: "Gaussian rational",
            input: input.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&s).map_err(|_| err())?));
        };
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(idx, _)| idx)
            .last();
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im = match im_part {
            "" | "+" => BigRational::from_int(1),
            "-" => BigRational::from_int(-1),
            other => parse_rational(other.trim_start_matches('+')).map_err(|_| err())?,
        };
        let re = parse_rational(re_part).map_err(|_| err())?;
        Ok(Self::new(re, im))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = BigRational::from_int(1);
        let im_text = |q: &BigRational| {
            if q.abs() == one {
                String::new()
            } else {
                q.abs().to_string()
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}i", im_text(&self.im))
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{sign}{}i", self.re, im_text(&self.im))
            }
        }
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        Self::from_ints(0, 0)
    }
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
    fn from_int(n: i64) -> Self {
        Self::from_ints(n, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Self::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
    fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        Some(self.mul(&rhs.unit_inverse()?))
    }
}

impl Field for GaussianRational {}

impl Conjugate for GaussianRational {
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(GaussianRational::parse("i").unwrap(), GaussianRational::i());
        assert_eq!(
            GaussianRational::parse("-i").unwrap(),
            GaussianRational::from_ints(0, -1)
        );
        assert_eq!(
            GaussianRational::parse("3").unwrap(),
            GaussianRational::from_ints(3, 0)
        );
        assert_eq!(
            GaussianRational::parse("1 - 2i").unwrap(),
            GaussianRational::from_ints(1, -2)
        );
        let half = BigRational::new(1.into(), 2.into());
        let q = GaussianRational::parse("1/2+3/4 i").unwrap();
        assert_eq!(q.re, half);
        assert_eq!(q.im, BigRational::new(3.into(), 4.into()));
        assert_eq!(GaussianRational::parse("-1/2-i").unwrap().re, -half);
        assert!(GaussianRational::parse("1+").is_err());
        assert!(GaussianRational::parse("ii").is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["i", "-i", "3", "1-2i", "1/2+3/4i", "-5i", "0"] {
            let g = GaussianRational::parse(s).unwrap();
            assert_eq!(GaussianRational::parse(&g.to_string()).unwrap(), g, "{s}");
        }
    }

    #[test]
    fn arithmetic() {
        let i = GaussianRational::i();
        assert_eq!(i.mul(&i), GaussianRational::from_int(-1));
        assert_eq!(
            i.unit_inverse().unwrap(),
            GaussianRational::from_ints(0, -1)
        );
        let z = GaussianRational::from_ints(3, 4);
        assert_eq!(z.mul(&z.conj()), GaussianRational::from_int(25));
        assert_eq!(z.mul(&z.unit_inverse().unwrap()), GaussianRational::one());
        assert!(GaussianRational::zero().unit_inverse().is_none());
    }
}
