//! Univariate polynomials over a field, and invariant factors of `xI - M`.

use std::fmt;

use crate::matrix::Matrix;
use crate::ring::{Field, Ring};

/// Coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(F::zero);
        Self::new((0..n).map(|i| get(self, i).add(&get(rhs, i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(Ring::neg).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().expect("division by the zero polynomial");
        let inv = dl
            .unit_inverse()
            .expect("nonzero field element is invertible");
        let dd = d.degree().unwrap_or(0);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty").mul(&inv);
            for (k, dc) in d.coeffs.iter().enumerate() {
                rem[shift + k] = rem[shift + k].sub(&c.mul(dc));
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Ring::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.unit_inverse().expect("nonzero")),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    /// Companion matrix of a monic polynomial of degree `d >= 1`.
    pub fn companion(&self) -> Matrix<F> {
        let d = self.degree().expect("nonzero");
        Matrix::from_fn(d, d, |i, j| {
            if j == d - 1 {
                self.coeffs[i].neg()
            } else if i == j + 1 {
                F::one()
            } else {
                F::zero()
            }
        })
    }
}

impl<F: Field> fmt::Display for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Monic invariant factors of `xI - m`, excluding the trailing units, in
/// divisibility order. Their product is the characteristic polynomial.
pub fn invariant_factors<F: Field>(m: &Matrix<F>) -> Vec<UPoly<F>> {
    assert!(m.is_square(), "invariant factors need a square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<UPoly<F>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = UPoly::constant(m.get(i, j).neg());
                    if i == j {
                        c.add(&UPoly::x())
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();

    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            // Smallest-degree nonzero entry in the trailing block becomes the pivot.
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, e) in row.iter().enumerate().skip(t) {
                    if let Some(d) = e.degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                // xI - M has full rank, so this never happens.
                unreachable!("characteristic matrix is nonsingular");
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                let (q, r) = a[i][t].div_rem(&pivot);
                if !q.is_zero() {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0].iter_mut().zip(&top[t]).skip(t) {
                        *x = x.sub(&q.mul(y));
                    }
                }
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                let (q, r) = a[t][j].div_rem(&pivot);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let v = row[j].sub(&q.mul(&row[t]));
                        row[j] = v;
                    }
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold a row in.
            let bad =
                (t + 1..n).find(|&i| (t + 1..n).any(|j| !a[i][j].div_rem(&pivot).1.is_zero()));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t].iter_mut().zip(&rest[0]).skip(t) {
                        *x = x.add(y);
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].monic());
    }
    diag.into_iter().filter(|p| !p.is_unit()).collect()
}

/// Direct sum of companion matrices of the invariant factors.
pub fn rational_canonical_form<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    invariant_factors(m)
        .iter()
        .fold(Matrix::zeros(0, 0), |acc, p| acc.direct_sum(&p.companion()))
}
