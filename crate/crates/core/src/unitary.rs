//! Crossing matrices of a representation and the unitarity obstruction.
//!
//! With `M` the copairing (an `n^2 x 1` column) and `N` the pairing (a
//! `1 x n^2` row), the crossings map to `R+ = A I + A^-1 MN` and
//! `R- = A^-1 I + A MN`. A unitary `R+` forces `n = 2` and `A^4 = 1`: with
//! `A = e^(i theta)` the Frobenius norms satisfy
//! `n^2 <= |M|^2 |N|^2 <= 4 cos^2(2 theta)`.
//!
//! Adjoints are conjugate transposes.

use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::rep::{
    make_representation, make_representation_approx, FormMatrix, RepError, Representation,
};
use crate::ring::{
    evaluate_poly, Conjugate, Field, GaussianRational, LaurentPoly, Ring, RingError, RingTag,
    RingValue,
};

/// Tolerance for the complex-double path.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnitaryError {
    #[error("unitarity needs a numeric point of evaluation, got the {0} ring")]
    UnsupportedRing(RingTag),
    #[error("crossing matrices are not mutually inverse")]
    NotInverse,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Matrix equality in a ring: exact, or within a tolerance for doubles.
pub trait Comparable: Ring {
    fn matrices_agree(a: &Matrix<Self>, b: &Matrix<Self>) -> bool;
}

macro_rules! exact_comparable {
    ($($t:ty),*) => {
        $(impl Comparable for $t {
            fn matrices_agree(a: &Matrix<Self>, b: &Matrix<Self>) -> bool {
                a == b
            }
        })*
    };
}

exact_comparable!(LaurentPoly, BigRational, GaussianRational);

impl Comparable for Complex64 {
    fn matrices_agree(a: &Matrix<Self>, b: &Matrix<Self>) -> bool {
        a.rows() == b.rows() && a.cols() == b.cols() && a.max_abs_diff(b) <= DEFAULT_TOLERANCE
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossingData<R: Ring> {
    pub a: R,
    /// Copairing, `n^2 x 1`.
    pub m: Matrix<R>,
    /// Pairing, `1 x n^2`.
    pub n: Matrix<R>,
    pub rplus: Matrix<R>,
    pub rminus: Matrix<R>,
}

impl<R: Ring> CrossingData<R> {
    pub fn rank(&self) -> usize {
        let sq = self.m.rows();
        (1..=sq)
            .find(|k| k * k == sq)
            .expect("copairing has square length")
    }

    /// `MN` as an `n^2 x n^2` matrix.
    pub fn turnback(&self) -> Matrix<R> {
        self.m.mul(&self.n)
    }
}

/// Builds `R+` and `R-` and checks that they are mutually inverse.
pub fn crossing_matrices<R: Comparable>(
    rep: &Representation<R>,
) -> Result<CrossingData<R>, UnitaryError> {
    let m = rep.cup_matrix();
    let n = rep.cap_matrix();
    let mn = m.mul(&n);
    let id = Matrix::identity(mn.rows());
    let a = rep.a().clone();
    let a_inv = rep.context().a_inv().clone();
    let rplus = id.scale(&a).add(&mn.scale(&a_inv));
    let rminus = id.scale(&a_inv).add(&mn.scale(&a));
    if !R::matrices_agree(&rplus.mul(&rminus), &id) || !R::matrices_agree(&rminus.mul(&rplus), &id)
    {
        return Err(UnitaryError::NotInverse);
    }
    Ok(CrossingData {
        a,
        m,
        n,
        rplus,
        rminus,
    })
}

/// Whether `R+^dagger R+ = I` (exactly, or within tolerance for doubles).
pub fn crossing_is_unitary<R: Comparable + Conjugate>(data: &CrossingData<R>) -> bool {
    let prod = data.rplus.conjugate_transpose().mul(&data.rplus);
    R::matrices_agree(&prod, &Matrix::identity(prod.rows()))
}

/// Exact unitarity at a Gaussian-rational point.
pub fn is_unitary_exact(rep: &Representation<GaussianRational>) -> Result<bool, UnitaryError> {
    Ok(crossing_is_unitary(&crossing_matrices(rep)?))
}

/// Unitarity of a double-precision representation within `tol`.
pub fn is_unitary_numeric(rep: &Representation<Complex64>, tol: f64) -> Result<bool, UnitaryError> {
    let data = crossing_matrices(rep)?;
    let prod = data.rplus.conjugate_transpose().mul(&data.rplus);
    Ok(prod.max_abs_diff(&Matrix::identity(prod.rows())) <= tol)
}

/// Unitarity of the representation of `form` at `a`.
///
/// Rational and Gaussian points are decided exactly; complex points use
/// `tol`. A symbolic `a` is rejected.
pub fn is_unitary(form: &FormMatrix, a: &RingValue, tol: f64) -> Result<bool, UnitaryError> {
    match a {
        RingValue::Laurent(_) => Err(UnitaryError::UnsupportedRing(RingTag::Laurent)),
        RingValue::Rational(q) => {
            let g = RingValue::Gaussian(GaussianRational::real(q.clone()));
            is_unitary(form, &g, tol)
        }
        RingValue::Gaussian(g) => {
            let FormMatrix::Gaussian(m) = form.specialize(a)? else {
                unreachable!("specialising to a Gaussian point yields a Gaussian form")
            };
            is_unitary_exact(&make_representation(m, g.clone())?)
        }
        RingValue::Complex(z) => {
            let m = complex_form(form, *z)?;
            is_unitary_numeric(&make_representation_approx(m, *z, tol)?, tol)
        }
    }
}

/// The form with entries embedded in (or, for Laurent entries, evaluated
/// into) the complex doubles.
pub fn complex_form(form: &FormMatrix, a: Complex64) -> Result<Matrix<Complex64>, UnitaryError> {
    Ok(match form {
        FormMatrix::Laurent(m) => {
            m.try_map(|p| match evaluate_poly(p, &RingValue::Complex(a))? {
                RingValue::Complex(z) => Ok::<_, RingError>(z),
                _ => unreachable!("evaluation stays in the ring of the point"),
            })?
        }
        FormMatrix::Rational(m) => m.map(|q| GaussianRational::real(q.clone()).to_complex()),
        FormMatrix::Gaussian(m) => m.map(Conjugate::to_complex),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBound {
    /// `4 cos^2(2 theta)`
    pub lhs: f64,
    /// `n^2`
    pub rhs: f64,
    pub feasible: bool,
}

/// The two ends of the Frobenius-norm chain for rank `n` at `A = e^(i theta)`.
///
/// `lhs` never exceeds 4, so feasibility needs `n = 2` and `cos^2(2 theta) = 1`.
/// The comparison allows a few ulps so that `theta = k pi / 2` is feasible
/// despite rounding in `cos`.
pub fn norm_bound_report(n: usize, theta: f64) -> NormBound {
    let c = (2.0 * theta).cos();
    let lhs = 4.0 * c * c;
    let rhs = (n * n) as f64;
    NormBound {
        lhs,
        rhs,
        feasible: lhs >= rhs - 1e-12,
    }
}

impl NormBound {
    pub fn to_json(&self) -> Value {
        json!({"lhs": self.lhs, "rhs": self.rhs, "feasible": self.feasible})
    }
}

/// `|M|^2 |N|^2`, the middle of the norm chain.
pub fn frobenius_product<R: Conjugate>(data: &CrossingData<R>) -> f64 {
    let sq = |m: &Matrix<R>| m.map(Conjugate::to_complex).frobenius_norm_sqr();
    sq(&data.m) * sq(&data.n)
}

/// `(R+ (x) I)(I (x) R+)(R+ (x) I) == (I (x) R+)(R+ (x) I)(I (x) R+)`.
pub fn braid_relation_holds<R: Comparable>(data: &CrossingData<R>) -> bool {
    let id = Matrix::identity(data.rank());
    let left = data.rplus.kron(&id);
    let right = id.kron(&data.rplus);
    let lhs = left.mul(&right).mul(&left);
    let rhs = right.mul(&left).mul(&right);
    R::matrices_agree(&lhs, &rhs)
}

/// Ranks of `MN` and of `a^-1 (MN)^dagger - a MN`.
pub fn turnback_ranks<R: Field + Conjugate>(data: &CrossingData<R>) -> (usize, usize) {
    let mn = data.turnback();
    let a_inv = data
        .a
        .unit_inverse()
        .expect("the point of evaluation is a unit");
    let diff = mn
        .conjugate_transpose()
        .scale(&a_inv)
        .sub(&mn.scale(&data.a));
    (mn.rank(), diff.rank())
}
