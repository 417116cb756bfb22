//! Matrix representations of the Temperley-Lieb category from a bilinear form.
//!
//! For an invertible `r x r` form `B` with inverse `B^`, `cap` is the pairing
//! `e_i (x) e_j -> B[i][j]` and `cup` is the copairing
//! `1 -> sum B^[i][j] e_i (x) e_j`. A closed loop then evaluates to
//! `trace(B^-1 B^T)`, which must equal `delta`.
//!
//! An `m -> n` morphism becomes an `r^n x r^m` matrix; multi-indices are
//! read with the leftmost strand as the most significant digit.

use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

use crate::matrix::{Matrix, MatrixError};
use crate::ring::{
    evaluate_poly, GaussianRational, LaurentPoly, Ring, RingError, RingTag, RingValue,
};
use crate::skein::SkeinContext;
use crate::tangle::{Generator, TangleExpr, TangleWord};
use crate::tl::{PlanarMatching, TlElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("form is not invertible over its ring (determinant {determinant})")]
    NotInvertible { determinant: String },
    #[error("form is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("trace of the asymmetry is {trace}, expected delta = {expected}")]
    DeltaMismatch { trace: String, expected: String },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("rank_n_form needs n >= 2, got {0}")]
    RankTooSmall(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl From<MatrixError> for RepError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::NotInvertible { determinant } => RepError::NotInvertible { determinant },
            MatrixError::NotSquare { rows, cols } => RepError::NotSquare { rows, cols },
            MatrixError::Ragged { expected, found } => RepError::NotSquare {
                rows: expected,
                cols: found,
            },
        }
    }
}

pub fn form_inverse<R: Ring>(b: &Matrix<R>) -> Result<Matrix<R>, RepError> {
    Ok(b.inverse()?)
}

/// `B^-1 B^T`.
pub fn asymmetry<R: Ring>(b: &Matrix<R>) -> Result<Matrix<R>, RepError> {
    Ok(form_inverse(b)?.mul(&b.transpose()))
}

pub fn check_delta<R: Ring>(b: &Matrix<R>, delta: &R) -> Result<bool, RepError> {
    Ok(asymmetry(b)?.trace() == *delta)
}

/// The representation attached to an admissible form at a point `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<R: Ring> {
    form: Matrix<R>,
    inverse: Matrix<R>,
    ctx: SkeinContext<R>,
}

pub fn make_representation<R: Ring>(form: Matrix<R>, a: R) -> Result<Representation<R>, RepError> {
    let inverse = form_inverse(&form)?;
    let ctx = SkeinContext::new(a).map_err(|e| match e {
        crate::skein::SkeinError::Ring(r) => RepError::Ring(r),
        other => unreachable!("context construction only fails on units: {other}"),
    })?;
    let trace = inverse.mul(&form.transpose()).trace();
    if trace != *ctx.delta() {
        return Err(RepError::DeltaMismatch {
            trace: trace.to_string(),
            expected: ctx.delta().to_string(),
        });
    }
    Ok(Representation { form, inverse, ctx })
}

/// Floating-point variant of [`make_representation`]: the trace condition
/// only has to hold within `tol`.
pub fn make_representation_approx(
    form: Matrix<Complex64>,
    a: Complex64,
    tol: f64,
) -> Result<Representation<Complex64>, RepError> {
    let inverse = form_inverse(&form)?;
    let ctx = SkeinContext::new(a).map_err(|e| match e {
        crate::skein::SkeinError::Ring(r) => RepError::Ring(r),
        other => unreachable!("context construction only fails on units: {other}"),
    })?;
    let trace = inverse.mul(&form.transpose()).trace();
    if (trace - ctx.delta()).norm() > tol {
        return Err(RepError::DeltaMismatch {
            trace: trace.to_string(),
            expected: ctx.delta().to_string(),
        });
    }
    Ok(Representation { form, inverse, ctx })
}

impl<R: Ring> Representation<R> {
    pub fn rank(&self) -> usize {
        self.form.rows()
    }

    pub fn form(&self) -> &Matrix<R> {
        &self.form
    }

    pub fn inverse(&self) -> &Matrix<R> {
        &self.inverse
    }

    pub fn a(&self) -> &R {
        self.ctx.a()
    }

    pub fn delta(&self) -> &R {
        self.ctx.delta()
    }

    pub fn context(&self) -> &SkeinContext<R> {
        &self.ctx
    }

    /// `1 x r^2` row vector of the pairing.
    pub fn cap_matrix(&self) -> Matrix<R> {
        let r = self.rank();
        Matrix::from_fn(1, r * r, |_, k| self.form.get(k / r, k % r).clone())
    }

    /// `r^2 x 1` column vector of the copairing.
    pub fn cup_matrix(&self) -> Matrix<R> {
        let r = self.rank();
        Matrix::from_fn(r * r, 1, |k, _| self.inverse.get(k / r, k % r).clone())
    }

    pub fn turnback_matrix(&self) -> Matrix<R> {
        self.cup_matrix().mul(&self.cap_matrix())
    }

    pub fn generator_matrix(&self, g: Generator) -> Matrix<R> {
        let r = self.rank();
        let id2 = || Matrix::identity(r * r);
        match g {
            Generator::Id => Matrix::identity(r),
            Generator::Cup => self.cup_matrix(),
            Generator::Cap => self.cap_matrix(),
            Generator::Xp => id2()
                .scale(self.ctx.a())
                .add(&self.turnback_matrix().scale(self.ctx.a_inv())),
            Generator::Xm => id2()
                .scale(self.ctx.a_inv())
                .add(&self.turnback_matrix().scale(self.ctx.a())),
        }
    }

    /// Kronecker product of the factors of one slice.
    pub fn slice_matrix(&self, factors: &[Generator]) -> Matrix<R> {
        factors.iter().fold(Matrix::identity(1), |acc, &g| {
            acc.kron(&self.generator_matrix(g))
        })
    }

    /// Product of slice matrices, last slice leftmost.
    pub fn evaluate_word_by_slices(&self, word: &TangleWord) -> Matrix<R> {
        let r = self.rank();
        let start = Matrix::identity(r.pow(word.source() as u32));
        word.slices()
            .iter()
            .fold(start, |acc, s| self.slice_matrix(s.factors()).mul(&acc))
    }

    /// Same value as [`Self::evaluate_word_by_slices`], contracting one
    /// generator at a time into the running matrix instead of forming
    /// Kronecker products of whole slices.
    pub fn evaluate_word(&self, word: &TangleWord) -> Matrix<R> {
        let r = self.rank();
        let mut state = Matrix::identity(r.pow(word.source() as u32));
        let mut width = word.source();
        for slice in word.slices() {
            let mut left = 0;
            for &g in slice.factors() {
                if g != Generator::Id {
                    state = self.apply_generator(&state, g, left, width);
                    width = width - g.domain() + g.codomain();
                }
                left += g.codomain();
            }
        }
        state
    }

    /// `(Id^left (x) G (x) Id^right) * state`, where `state` has `r^width` rows.
    fn apply_generator(
        &self,
        state: &Matrix<R>,
        g: Generator,
        left: usize,
        width: usize,
    ) -> Matrix<R> {
        let r = self.rank();
        let gm = self.generator_matrix(g);
        let (ins, outs) = (g.domain(), g.codomain());
        let right = width - left - ins;
        let (rl, rr) = (r.pow(left as u32), r.pow(right as u32));
        let (ri, ro) = (r.pow(ins as u32), r.pow(outs as u32));
        let mut out: Matrix<R> = Matrix::zeros(rl * ro * rr, state.cols());
        for p in 0..rl {
            for s in 0..rr {
                for o in 0..ro {
                    let row = (p * ro + o) * rr + s;
                    for i in 0..ri {
                        let c = gm.get(o, i);
                        if c.is_zero() {
                            continue;
                        }
                        let src = (p * ri + i) * rr + s;
                        for col in 0..state.cols() {
                            let x = state.get(src, col);
                            if !x.is_zero() {
                                let v = out.get(row, col).add(&c.mul(x));
                                out.set(row, col, v);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Direct evaluation of one matching: bottom arcs pair through `B`, top
    /// arcs through `B^`, through-strands are Kronecker deltas.
    pub fn evaluate_matching(&self, m: &PlanarMatching) -> Matrix<R> {
        let r = self.rank();
        let (bottom, top) = (m.bottom(), m.top());
        let digits = |mut x: usize, len: usize| {
            let mut d = vec![0; len];
            for k in (0..len).rev() {
                d[k] = x % r;
                x /= r;
            }
            d
        };
        let pairs = m.pairs();
        Matrix::from_fn(r.pow(top as u32), r.pow(bottom as u32), |row, col| {
            let y = digits(row, top);
            let x = digits(col, bottom);
            let mut acc = R::one();
            for &(p, q) in &pairs {
                let term = match (p < bottom, q < bottom) {
                    (true, true) => self.form.get(x[p], x[q]).clone(),
                    (false, false) => self.inverse.get(y[p - bottom], y[q - bottom]).clone(),
                    _ => {
                        if x[p] == y[q - bottom] {
                            R::one()
                        } else {
                            R::zero()
                        }
                    }
                };
                if term.is_zero() {
                    return R::zero();
                }
                acc = acc.mul(&term);
            }
            acc
        })
    }

    pub fn evaluate_tl(&self, x: &TlElement<R>) -> Matrix<R> {
        let r = self.rank();
        let mut out = Matrix::zeros(r.pow(x.target() as u32), r.pow(x.source() as u32));
        for (m, c) in x.terms() {
            out = out.add(&self.evaluate_matching(m).scale(c));
        }
        out
    }

    /// Routes the expression through its TL normal form.
    pub fn evaluate_expr(&self, e: &TangleExpr) -> Matrix<R> {
        self.evaluate_tl(&self.ctx.expand_to_tl(e))
    }
}

/// The bordered `n x n` form built from `[[1, A + A^-1], [0, 1]]`.
pub fn rank_n_form<R: Ring>(n: usize, a: &R) -> Result<Matrix<R>, RepError> {
    if n < 2 {
        return Err(RepError::RankTooSmall(n));
    }
    let a_inv = a
        .unit_inverse()
        .ok_or_else(|| RingError::NotAUnit(a.to_string()))?;
    let s = a.add(&a_inv);
    let mut b = Matrix::from_rows(vec![vec![R::one(), s], vec![R::zero(), R::one()]]).expect("2x2");
    for k in 2..n {
        b = Matrix::from_fn(k + 1, k + 1, |i, j| match (i < k, j < k) {
            (true, true) => b.get(i, j).clone(),
            (_, false) if i + 1 >= k => R::one(),
            _ => R::zero(),
        });
    }
    Ok(b)
}

/// A square form over one of the exact rings.
#[derive(Debug, Clone, PartialEq)]
pub enum FormMatrix {
    Laurent(Matrix<LaurentPoly>),
    Rational(Matrix<BigRational>),
    Gaussian(Matrix<GaussianRational>),
}

impl FormMatrix {
    pub fn tag(&self) -> RingTag {
        match self {
            FormMatrix::Laurent(_) => RingTag::Laurent,
            FormMatrix::Rational(_) => RingTag::Rational,
            FormMatrix::Gaussian(_) => RingTag::Gaussian,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            FormMatrix::Laurent(m) => m.rows(),
            FormMatrix::Rational(m) => m.rows(),
            FormMatrix::Gaussian(m) => m.rows(),
        }
    }

    /// Moves the form into the ring of `a`. Laurent entries are evaluated at
    /// `a`; rational entries embed into the Gaussian rationals.
    pub fn specialize(&self, a: &RingValue) -> Result<FormMatrix, RepError> {
        let mismatch = || RingError::TagMismatch {
            left: self.tag(),
            right: a.tag(),
        };
        Ok(match (self, a) {
            (FormMatrix::Laurent(m), RingValue::Laurent(_)) => FormMatrix::Laurent(m.clone()),
            (FormMatrix::Laurent(m), RingValue::Rational(_)) => {
                FormMatrix::Rational(m.try_map(|p| match evaluate_poly(p, a)? {
                    RingValue::Rational(q) => Ok::<_, RingError>(q),
                    _ => unreachable!(),
                })?)
            }
            (FormMatrix::Laurent(m), RingValue::Gaussian(_)) => {
                FormMatrix::Gaussian(m.try_map(|p| match evaluate_poly(p, a)? {
                    RingValue::Gaussian(g) => Ok::<_, RingError>(g),
                    _ => unreachable!(),
                })?)
            }
            (FormMatrix::Rational(m), RingValue::Rational(_)) => FormMatrix::Rational(m.clone()),
            (FormMatrix::Rational(m), RingValue::Gaussian(_)) => {
                FormMatrix::Gaussian(m.map(|q| GaussianRational::real(q.clone())))
            }
            (FormMatrix::Gaussian(m), RingValue::Gaussian(_)) => FormMatrix::Gaussian(m.clone()),
            _ => return Err(mismatch().into()),
        })
    }

    pub fn inverse(&self) -> Result<FormMatrix, RepError> {
        Ok(match self {
            FormMatrix::Laurent(m) => FormMatrix::Laurent(form_inverse(m)?),
            FormMatrix::Rational(m) => FormMatrix::Rational(form_inverse(m)?),
            FormMatrix::Gaussian(m) => FormMatrix::Gaussian(form_inverse(m)?),
        })
    }

    pub fn asymmetry_trace(&self) -> Result<RingValue, RepError> {
        Ok(match self {
            FormMatrix::Laurent(m) => RingValue::Laurent(asymmetry(m)?.trace()),
            FormMatrix::Rational(m) => RingValue::Rational(asymmetry(m)?.trace()),
            FormMatrix::Gaussian(m) => RingValue::Gaussian(asymmetry(m)?.trace()),
        })
    }

    /// Entries as strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        fn rows<R: Ring>(m: &Matrix<R>) -> Vec<Vec<String>> {
            m.to_rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect()
        }
        match self {
            FormMatrix::Laurent(m) => rows(m),
            FormMatrix::Rational(m) => rows(m),
            FormMatrix::Gaussian(m) => rows(m),
        }
    }
}
