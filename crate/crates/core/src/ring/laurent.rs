use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Ring, RingError};

/// Largest absolute exponent a [`LaurentPoly`] may carry.
pub const EXPONENT_LIMIT: i64 = 1_000_000;

/// An element of `Z[A, A^-1]`, stored as exponent -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

fn guard(exp: i64) -> Result<i64, RingError> {
    if exp.abs() > EXPONENT_LIMIT {
        Err(RingError::ExponentOutOfRange(exp))
    } else {
        Ok(exp)
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * A^exp`. Panics if `exp` is outside the exponent guard.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::try_monomial(c, exp).expect("Laurent exponent guard")
    }

    pub fn try_monomial(c: impl Into<BigInt>, exp: i64) -> Result<Self, RingError> {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(guard(exp)?, c);
        }
        Ok(Self { terms })
    }

    /// The indeterminate `A`.
    pub fn a() -> Self {
        Self::monomial(1, 1)
    }

    /// `A^-1`.
    pub fn a_inv() -> Self {
        Self::monomial(1, -1)
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn delta() -> Self {
        Self::from_pairs([(2, -1), (-2, -1)])
    }

    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let exp = guard(exp).expect("Laurent exponent guard");
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (guard(e + k).expect("Laurent exponent guard"), c.clone()))
                .collect(),
        }
    }

    /// The substitution `A -> A^-1`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Product with the exponent guard reported instead of panicking.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, RingError> {
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = guard(e1 + e2)?;
                *out.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Self { terms: out })
    }

    /// Units of `Z[A, A^-1]` are exactly `+-A^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.abs().is_one() {
            Some(Self::monomial(c.clone(), -e))
        } else {
            None
        }
    }

    /// Exact division; `None` when `rhs` does not divide `self`.
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (q_lo, q_hi) = (rhs.min_exponent()?, rhs.max_exponent()?);
        let lead = &rhs.terms[&q_hi];
        let floor = self.min_exponent()? - q_lo;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(top) = rem.max_exponent() {
            let e = top - q_hi;
            if e < floor {
                return None;
            }
            let (c, r) = rem.terms[&top].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            let step = Self::try_monomial(c, e).ok()?;
            rem = &rem - &(&step * rhs);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Value at `A = 1`, i.e. the sum of coefficients.
    pub fn sum_of_coefficients(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluates at an element `a` of any ring, given `a^-1`.
    pub fn evaluate_with<R: Ring>(&self, a: &R, a_inv: &R) -> R {
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let base = if *e >= 0 { a } else { a_inv };
            let power = base.pow(e.unsigned_abs() as u32);
            let coeff = match c.to_i64() {
                Some(small) => R::from_int(small),
                None => big_to_ring(c),
            };
            acc = acc.add(&coeff.mul(&power));
        }
        acc
    }

    /// JSON form: exponent string -> integer coefficient.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (e, c) in self.terms.iter().rev() {
            let v = match c.to_i64() {
                Some(small) => serde_json::Value::from(small),
                None => serde_json::Value::String(c.to_string()),
            };
            map.insert(e.to_string(), v);
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, RingError> {
        let err = || RingError::Parse {
            kind: "Laurent polynomial JSON",
            input: value.to_string(),
        };
        let obj = value.as_object().ok_or_else(err)?;
        let mut p = Self::zero();
        for (k, v) in obj {
            let e: i64 = k.trim().parse().map_err(|_| err())?;
            guard(e)?;
            let c: BigInt = match v {
                serde_json::Value::Number(n) => n.to_string().parse().map_err(|_| err())?,
                serde_json::Value::String(s) => s.parse().map_err(|_| err())?,
                _ => return Err(err()),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Parses the text form, e.g. `-A^2 - A^-2`, `3*A - 1`, `2A^-1`.
    pub fn parse(input: &str) -> Result<Self, RingError> {
        let err = || RingError::Parse {
            kind: "Laurent polynomial",
            input: input.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let bytes = s.as_bytes();
        let mut p = Self::zero();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            } else if i > 0 {
                return Err(err());
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: BigInt = if i > start {
                s[start..i].parse().map_err(|_| err())?
            } else {
                BigInt::one()
            };
            let has_digits = i > start;
            if i < bytes.len() && bytes[i] == b'*' {
                if !has_digits {
                    return Err(err());
                }
                i += 1;
                if i >= bytes.len() || bytes[i] != b'A' {
                    return Err(err());
                }
            }
            let mut exp = 0i64;
            if i < bytes.len() && bytes[i] == b'A' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let estart = i;
                    if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = s[estart..i].parse().map_err(|_| err())?;
                }
            } else if !has_digits {
                return Err(err());
            }
            guard(exp)?;
            p.add_term(exp, sign * coeff);
        }
        Ok(p)
    }
}

fn big_to_ring<R: Ring>(c: &BigInt) -> R {
    // Horner in base 2^32 keeps arbitrary-size coefficients exact.
    let (sign, digits) = c.to_u32_digits();
    let base = R::from_int(1 << 32);
    let mut acc = R::zero();
    for d in digits.iter().rev() {
        acc = acc.mul(&base).add(&R::from_int(i64::from(*d)));
    }
    if sign == num_bigint::Sign::Minus {
        acc.neg()
    } else {
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "A")?,
                (1, false) => write!(f, "{mag}*A")?,
                (_, true) => write!(f, "A^{e}")?,
                (_, false) => write!(f, "{mag}*A^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("Laurent exponent guard")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::constant(1)
    }
    fn from_int(n: i64) -> Self {
        LaurentPoly::constant(n)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
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
        LaurentPoly::unit_inverse(self)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        LaurentPoly::exact_div(self, rhs)
    }
}
