//! Canonical blocks for nondegenerate bilinear forms, the `(rank, delta)`
//! block solver, and form equivalence through similarity of asymmetries.
//!
//! Over an algebraically closed field of characteristic zero every
//! nondegenerate form is congruent to a direct sum of blocks `H_n(lambda)`
//! (rank `2n`) and `Gamma_n` (rank `n`). Two forms are congruent exactly when
//! their asymmetries `B^-1 B^T` are similar, which we decide by comparing
//! invariant factors.

mod poly;

pub use poly::{invariant_factors, rational_canonical_form, UPoly};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::rep::{asymmetry, check_delta, FormMatrix, RepError};
use crate::ring::{Field, QuadraticRational, Ring, RingTag};

/// Default cap on the number of blocks in one solution.
pub const DEFAULT_MAX_BLOCKS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormsError {
    #[error("invalid block {0}")]
    InvalidBlock(String),
    #[error("block {0} has an irrational parameter and no rational matrix")]
    IrrationalParameter(String),
    #[error("forms over the {0} ring are not supported here")]
    UnsupportedRing(RingTag),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// The parameter of an `H` block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lambda {
    Rational(BigRational),
    /// A root of `x^2 - trace*x + 1` whose discriminant is not a rational
    /// square. The two roots are mutually inverse, so either one names the
    /// same block up to congruence.
    Quadratic {
        trace: BigRational,
    },
}

impl Lambda {
    /// A `lambda` with `lambda + lambda^-1 = c`. Rational roots are returned
    /// with `|lambda| >= 1`.
    pub fn from_trace(c: BigRational) -> Lambda {
        let four = BigRational::from_int(4);
        let disc = &c * &c - four;
        match rational_sqrt(&disc) {
            Some(s) => {
                let two = BigRational::from_int(2);
                let root = if c.is_negative() {
                    (&c - s) / two
                } else {
                    (&c + s) / two
                };
                Lambda::Rational(root)
            }
            None => Lambda::Quadratic { trace: c },
        }
    }

    /// `lambda + lambda^-1`, or `None` for `lambda = 0`.
    pub fn trace_sum(&self) -> Option<BigRational> {
        match self {
            Lambda::Rational(l) if l.is_zero() => None,
            Lambda::Rational(l) => Some(l + l.recip()),
            Lambda::Quadratic { trace } => Some(trace.clone()),
        }
    }

    pub fn value(&self) -> QuadraticRational {
        match self {
            Lambda::Rational(l) => QuadraticRational::rational(l.clone()),
            Lambda::Quadratic { trace } => QuadraticRational::generator(trace.clone()),
        }
    }

    /// The representative of `{lambda, lambda^-1}` used in solver output.
    pub fn normalized(&self) -> Lambda {
        match self {
            Lambda::Rational(l) if !l.is_zero() && l.abs() < BigRational::one() => {
                Lambda::Rational(l.recip())
            }
            other => other.clone(),
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Rational(l) => write!(f, "{l}"),
            Lambda::Quadratic { trace } => {
                let half = trace / BigRational::from_int(2);
                let rad = &half * &half - BigRational::one();
                write!(f, "{half} ± sqrt({rad})")
            }
        }
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(BigRational::new(root(q.numer())?, root(q.denom())?))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalBlock {
    H { n: usize, lambda: Lambda },
    Gamma { n: usize },
}

impl CanonicalBlock {
    pub fn gamma(n: usize) -> Result<Self, FormsError> {
        let b = CanonicalBlock::Gamma { n };
        b.validate()?;
        Ok(b)
    }

    pub fn h(n: usize, lambda: Lambda) -> Result<Self, FormsError> {
        let b = CanonicalBlock::H { n, lambda };
        b.validate()?;
        Ok(b)
    }

    /// `H_n(lambda)` at a rational `lambda`.
    pub fn h_rational(n: usize, lambda: BigRational) -> Result<Self, FormsError> {
        Self::h(n, Lambda::Rational(lambda))
    }

    pub fn size(&self) -> usize {
        match self {
            CanonicalBlock::H { n, .. } | CanonicalBlock::Gamma { n } => *n,
        }
    }

    /// Rejects `n = 0`, `lambda = 0` and `lambda = (-1)^(n+1)`.
    pub fn validate(&self) -> Result<(), FormsError> {
        let bad = || Err(FormsError::InvalidBlock(self.to_string()));
        match self {
            CanonicalBlock::Gamma { n } if *n == 0 => bad(),
            CanonicalBlock::Gamma { .. } => Ok(()),
            CanonicalBlock::H { n, lambda } => {
                if *n == 0 {
                    return bad();
                }
                match lambda {
                    Lambda::Rational(l) if l.is_zero() || *l == sign(*n + 1) => bad(),
                    Lambda::Rational(_) => Ok(()),
                    // An irrational root is never 0 or +-1, but the trace must
                    // really have an irrational root.
                    Lambda::Quadratic { trace } => match Lambda::from_trace(trace.clone()) {
                        Lambda::Quadratic { .. } => Ok(()),
                        Lambda::Rational(_) => bad(),
                    },
                }
            }
        }
    }

    pub fn normalized(&self) -> Self {
        match self {
            CanonicalBlock::H { n, lambda } => CanonicalBlock::H {
                n: *n,
                lambda: lambda.normalized(),
            },
            g => g.clone(),
        }
    }

    pub fn variant(&self) -> &'static str {
        match self {
            CanonicalBlock::H { .. } => "H",
            CanonicalBlock::Gamma { .. } => "Gamma",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CanonicalBlock::Gamma { n } => {
                json!({"variant": "Gamma", "n": n, "lambda": null, "constraint": null})
            }
            CanonicalBlock::H { n, lambda } => {
                let c = lambda
                    .trace_sum()
                    .map(|c| format!("lambda + lambda^-1 = {c}"));
                json!({"variant": "H", "n": n, "lambda": lambda.to_string(), "constraint": c})
            }
        }
    }
}

impl fmt::Display for CanonicalBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalBlock::H { n, lambda } => write!(f, "H_{n}({lambda})"),
            CanonicalBlock::Gamma { n } => write!(f, "Gamma_{n}"),
        }
    }
}

fn sign(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `Gamma_n`: row `i` carries `(-1)^(n-1-i)` in columns `n-1-i` and `n-i`.
pub fn gamma_matrix<F: Field>(n: usize) -> Matrix<F> {
    Matrix::from_fn(n, n, |i, j| {
        if j + i + 1 == n || j + i == n {
            if (n - 1 - i).is_multiple_of(2) {
                F::one()
            } else {
                F::one().neg()
            }
        } else {
            F::zero()
        }
    })
}

/// `H_n(lambda) = [[0, I_n], [J_n(lambda), 0]]` with an upper Jordan block.
pub fn h_matrix<F: Field>(n: usize, lambda: &F) -> Matrix<F> {
    Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, false) if j - n == i => F::one(),
        (false, true) if j == i - n => lambda.clone(),
        (false, true) if j == i - n + 1 => F::one(),
        _ => F::zero(),
    })
}

/// The block over `Q(lambda)`; rational blocks have no `lambda`-parts.
pub fn block_matrix(b: &CanonicalBlock) -> Result<Matrix<QuadraticRational>, FormsError> {
    b.validate()?;
    Ok(match b {
        CanonicalBlock::Gamma { n } => gamma_matrix(*n),
        CanonicalBlock::H { n, lambda } => h_matrix(*n, &lambda.value()),
    })
}

/// The block as a rational form; fails for irrational `lambda`.
pub fn block_form(b: &CanonicalBlock) -> Result<FormMatrix, FormsError> {
    b.validate()?;
    Ok(FormMatrix::Rational(match b {
        CanonicalBlock::Gamma { n } => gamma_matrix(*n),
        CanonicalBlock::H {
            n,
            lambda: Lambda::Rational(l),
        } => h_matrix(*n, l),
        CanonicalBlock::H { .. } => return Err(FormsError::IrrationalParameter(b.to_string())),
    }))
}

/// `trace(B^-1 B^T)` of the block, computed from its matrix.
pub fn asymmetry_trace_of(b: &CanonicalBlock) -> Result<BigRational, FormsError> {
    let t = asymmetry(&block_matrix(b)?)?.trace();
    Ok(t.as_rational().expect("block traces are rational").clone())
}

/// Rank and asymmetry trace. The trace `n(lambda + lambda^-1)` is rational
/// even when `lambda` is not.
pub fn block_stats(b: &CanonicalBlock) -> (usize, BigRational) {
    match b {
        CanonicalBlock::Gamma { n } => (*n, sign(*n + 1) * BigRational::from_int(*n as i64)),
        CanonicalBlock::H { n, lambda } => {
            let c = lambda.trace_sum().unwrap_or_else(BigRational::zero);
            (2 * n, c * BigRational::from_int(*n as i64))
        }
    }
}

/// One way to reach a `(rank, delta)` pair with canonical blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSolution {
    pub blocks: Vec<CanonicalBlock>,
    pub rank: usize,
    pub trace: BigRational,
    /// `lambda + lambda^-1 = c` when the solution has `H` blocks.
    pub constraint: Option<BigRational>,
}

impl BlockSolution {
    /// Direct sum of the block matrices.
    pub fn matrix(&self) -> Result<Matrix<QuadraticRational>, FormsError> {
        self.blocks.iter().try_fold(Matrix::zeros(0, 0), |acc, b| {
            Ok(acc.direct_sum(&block_matrix(b)?))
        })
    }

    /// Whether the instantiated form satisfies the trace condition for `delta`.
    pub fn verify(&self, delta: &BigRational) -> Result<bool, FormsError> {
        Ok(check_delta(
            &self.matrix()?,
            &QuadraticRational::rational(delta.clone()),
        )?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "trace": self.trace.to_string(),
            "blocks": self.blocks.iter().map(CanonicalBlock::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for BlockSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" + "))?;
        if let Some(c) = &self.constraint {
            write!(f, " where lambda + lambda^-1 = {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Shape {
    H(usize),
    Gamma(usize),
}

impl Shape {
    fn rank(self) -> usize {
        match self {
            Shape::H(n) => 2 * n,
            Shape::Gamma(n) => n,
        }
    }
}

/// Every multiset of at most `max_blocks` blocks with total rank `rank` and
/// asymmetry trace `delta`.
///
/// All `H` blocks of one solution share one parameter `lambda`, fixed by
/// `sum(n_k) * (lambda + lambda^-1) = delta - (Gamma traces)`. Solutions in
/// which some `H_n(lambda)` breaks `lambda != (-1)^(n+1)` are dropped, and
/// `lambda` is reported as the representative of `{lambda, lambda^-1}`.
pub fn solve_blocks(rank: usize, delta: &BigRational, max_blocks: usize) -> Vec<BlockSolution> {
    let mut shapes: Vec<Shape> = (1..=rank / 2).map(Shape::H).collect();
    shapes.extend((1..=rank).map(Shape::Gamma));
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    partitions(&shapes, 0, rank, max_blocks, &mut chosen, &mut |picked| {
        if let Some(s) = realize(picked, rank, delta) {
            out.push(s);
        }
    });
    out.sort_by(|a, b| a.blocks.cmp(&b.blocks));
    out.dedup();
    out
}

fn partitions(
    shapes: &[Shape],
    from: usize,
    remaining: usize,
    budget: usize,
    chosen: &mut Vec<Shape>,
    emit: &mut dyn FnMut(&[Shape]),
) {
    if remaining == 0 {
        emit(chosen);
        return;
    }
    if budget == 0 {
        return;
    }
    for (k, &s) in shapes.iter().enumerate().skip(from) {
        if s.rank() <= remaining {
            chosen.push(s);
            partitions(shapes, k, remaining - s.rank(), budget - 1, chosen, emit);
            chosen.pop();
        }
    }
}

fn realize(picked: &[Shape], rank: usize, delta: &BigRational) -> Option<BlockSolution> {
    let mut gamma_trace = BigRational::zero();
    let mut h_weight = 0usize;
    for s in picked {
        match *s {
            Shape::Gamma(n) => gamma_trace += block_stats(&CanonicalBlock::Gamma { n }).1,
            Shape::H(n) => h_weight += n,
        }
    }
    if h_weight == 0 {
        return (gamma_trace == *delta).then(|| BlockSolution {
            blocks: sorted(
                picked
                    .iter()
                    .map(|s| CanonicalBlock::Gamma { n: s.rank() })
                    .collect(),
            ),
            rank,
            trace: delta.clone(),
            constraint: None,
        });
    }
    let c = (delta - &gamma_trace) / BigRational::from_int(h_weight as i64);
    let lambda = Lambda::from_trace(c.clone()).normalized();
    let mut blocks = Vec::with_capacity(picked.len());
    for s in picked {
        blocks.push(match *s {
            Shape::Gamma(n) => CanonicalBlock::Gamma { n },
            Shape::H(n) => CanonicalBlock::h(n, lambda.clone()).ok()?,
        });
    }
    Some(BlockSolution {
        blocks: sorted(blocks),
        rank,
        trace: delta.clone(),
        constraint: Some(c),
    })
}

/// `H` blocks first, then larger blocks first.
fn sorted(mut blocks: Vec<CanonicalBlock>) -> Vec<CanonicalBlock> {
    blocks.sort_by(|a, b| {
        let key = |x: &CanonicalBlock| {
            (
                matches!(x, CanonicalBlock::Gamma { .. }),
                std::cmp::Reverse(x.size()),
            )
        };
        key(a).cmp(&key(b)).then_with(|| a.cmp(b))
    });
    blocks
}

/// Similarity of asymmetries over any exact field.
pub fn forms_equivalent_exact<F: Field>(b: &Matrix<F>, c: &Matrix<F>) -> Result<bool, FormsError> {
    let (sb, sc) = (asymmetry(b)?, asymmetry(c)?);
    if sb.rows() != sc.rows() {
        return Ok(false);
    }
    Ok(invariant_factors(&sb) == invariant_factors(&sc))
}

/// Congruence of two rational forms.
pub fn forms_equivalent(b: &FormMatrix, c: &FormMatrix) -> Result<bool, FormsError> {
    match (b, c) {
        (FormMatrix::Rational(x), FormMatrix::Rational(y)) => forms_equivalent_exact(x, y),
        (FormMatrix::Rational(_), other) | (other, _) => {
            Err(FormsError::UnsupportedRing(other.tag()))
        }
    }
}
