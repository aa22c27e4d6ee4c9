//! Scalar fields the matrix kernels are generic over.
//!
//! Four fields are supported: exact rationals, exact Gaussian rationals,
//! binary64 reals and binary64 complex numbers. Arithmetic goes through
//! explicit by-reference methods so the exact fields can route every
//! operation through the fast reduction helpers in [`super::rational`].

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::rational as q;
use super::scalar::{DynMatrix, Scalar};

/// A field of matrix entries, possibly complex.
pub trait Field: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    /// The real subfield (`Self` for real fields).
    type Real: RealField;

    /// Whether arithmetic in this field is exact.
    const EXACT: bool;

    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// `None` when dividing by zero.
    fn div_ref(&self, rhs: &Self) -> Option<Self>;
    fn neg_ref(&self) -> Self;
    fn conj(&self) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn from_real(r: Self::Real) -> Self;
    /// `|z|^2`.
    fn norm_sqr(&self) -> Self::Real;
    fn to_c64(&self) -> Complex64;
    /// `|self - other| <= tol`, decided exactly in exact fields.
    fn within(&self, other: &Self, tol: f64) -> bool;
    fn to_scalar(&self) -> Scalar;
    fn wrap_matrix(m: Matrix<Self>) -> DynMatrix;

    /// `m^k` for a square `m`. Exact fields override this with a
    /// common-denominator integer kernel.
    fn matrix_power(m: &Matrix<Self>, k: u64) -> Matrix<Self> {
        square_and_multiply(m, k)
    }
}

/// A totally ordered real field.
pub trait RealField: Field<Real = Self> + PartialOrd {
    fn to_f64(&self) -> f64;
    fn abs_value(&self) -> Self;
    /// Exact conversion for exact fields; identity for binary64.
    fn from_f64_value(x: f64) -> Option<Self>;
}

pub(crate) fn square_and_multiply<T: Field>(m: &Matrix<T>, mut k: u64) -> Matrix<T> {
    let mut result = Matrix::identity(m.rows());
    let mut base = m.clone();
    while k > 0 {
        if k & 1 == 1 {
            result = result.mul_unchecked(&base);
        }
        k >>= 1;
        if k > 0 {
            base = base.mul_unchecked(&base);
        }
    }
    result
}

fn tol_rational(tol: f64) -> BigRational {
    q::from_f64(tol.abs()).unwrap_or_else(BigRational::zero)
}

impl Field for BigRational {
    type Real = BigRational;
    const EXACT: bool = true;

    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        q::add(self, rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        q::sub(self, rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        q::mul(self, rhs)
    }
    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        q::div(self, rhs)
    }
    fn neg_ref(&self) -> Self {
        q::neg(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn re(&self) -> Self {
        self.clone()
    }
    fn im(&self) -> Self {
        Zero::zero()
    }
    fn from_real(r: Self) -> Self {
        r
    }
    fn norm_sqr(&self) -> Self {
        q::mul(self, self)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(q::to_f64(self), 0.0)
    }
    fn within(&self, other: &Self, tol: f64) -> bool {
        if tol == 0.0 {
            return self == other;
        }
        q::sub(self, other).abs() <= tol_rational(tol)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::ExactReal(self.clone())
    }
    fn wrap_matrix(m: Matrix<Self>) -> DynMatrix {
        DynMatrix::Rational(m)
    }

    fn matrix_power(m: &Matrix<Self>, k: u64) -> Matrix<Self> {
        rational_matrix_power(m, k)
    }
}

impl RealField for BigRational {
    fn to_f64(&self) -> f64 {
        q::to_f64(self)
    }
    fn abs_value(&self) -> Self {
        Signed::abs(self)
    }
    fn from_f64_value(x: f64) -> Option<Self> {
        q::from_f64(x)
    }
}

/// `m^k` over the rationals without intermediate gcds: the matrix is
/// written as an integer matrix over the lcm `D` of its denominators, the
/// integer matrix is powered, and each entry of the result is reduced
/// against `D^k` once, by trial division over the primes of `D` when they
/// are small.
fn rational_matrix_power(m: &Matrix<BigRational>, k: u64) -> Matrix<BigRational> {
    let n = m.rows();
    if k == 0 {
        return Matrix::identity(n);
    }
    let denom = q::common_denominator(m.entries());
    let ints: Vec<BigInt> = m
        .entries()
        .iter()
        .map(|v| v.numer() * (&denom / v.denom()))
        .collect();
    let int_mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a_il = &a[i * n + l];
                if a_il.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b_lj = &b[l * n + j];
                    if !b_lj.is_zero() {
                        out[i * n + j] += a_il * b_lj;
                    }
                }
            }
        }
        out
    };
    // left to right, so every non-squaring product has one small factor
    let mut result = ints.clone();
    for bit in (0..63 - k.leading_zeros()).rev() {
        result = if n == 2 { square_2x2(&result) } else { int_mul(&result, &result) };
        if (k >> bit) & 1 == 1 {
            result = int_mul(&result, &ints);
        }
    }
    let denom_k = num_traits::pow(denom.clone(), k as usize);
    let primes = super::primes::small_prime_factors(&denom, super::primes::DEFAULT_TRIAL_BOUND);
    let data = result
        .into_iter()
        .map(|v| match &primes {
            Some(ps) => q::reduce_over_primes(v, denom_k.clone(), ps),
            None => q::reduce(v, denom_k.clone()),
        })
        .collect();
    Matrix::from_vec_unchecked(n, n, data)
}

/// `[[a, b], [c, d]]^2` with five products instead of eight.
fn square_2x2(m: &[BigInt]) -> Vec<BigInt> {
    let (a, b, c, d) = (&m[0], &m[1], &m[2], &m[3]);
    let bc = b * c;
    let trace = a + d;
    vec![a * a + &bc, b * &trace, c * &trace, d * d + bc]
}

/// An exact complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "[{}, {}]", self.re, self.im)
        }
    }
}

impl Field for GaussianRational {
    type Real = BigRational;
    const EXACT: bool = true;

    fn zero_elem() -> Self {
        Self::real(BigRational::zero())
    }
    fn one_elem() -> Self {
        Self::real(BigRational::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Self::new(q::add(&self.re, &rhs.re), q::add(&self.im, &rhs.im))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Self::new(q::sub(&self.re, &rhs.re), q::sub(&self.im, &rhs.im))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(q::mul(&self.re, &rhs.re));
        }
        let re = q::sub(&q::mul(&self.re, &rhs.re), &q::mul(&self.im, &rhs.im));
        let im = q::add(&q::mul(&self.re, &rhs.im), &q::mul(&self.im, &rhs.re));
        Self::new(re, im)
    }
    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        let n = rhs.norm_sqr();
        let inv = q::recip(&n)?;
        let num = self.mul_ref(&rhs.conj());
        Some(Self::new(q::mul(&num.re, &inv), q::mul(&num.im, &inv)))
    }
    fn neg_ref(&self) -> Self {
        Self::new(q::neg(&self.re), q::neg(&self.im))
    }
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), q::neg(&self.im))
    }
    fn re(&self) -> BigRational {
        self.re.clone()
    }
    fn im(&self) -> BigRational {
        self.im.clone()
    }
    fn from_real(r: BigRational) -> Self {
        Self::real(r)
    }
    fn norm_sqr(&self) -> BigRational {
        q::add(&q::mul(&self.re, &self.re), &q::mul(&self.im, &self.im))
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(q::to_f64(&self.re), q::to_f64(&self.im))
    }
    fn within(&self, other: &Self, tol: f64) -> bool {
        if tol == 0.0 {
            return self == other;
        }
        let t = tol_rational(tol);
        self.sub_ref(other).norm_sqr() <= q::mul(&t, &t)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::ExactComplex(self.clone())
    }
    fn wrap_matrix(m: Matrix<Self>) -> DynMatrix {
        DynMatrix::ComplexRational(m)
    }
}

impl Field for f64 {
    type Real = f64;
    const EXACT: bool = false;

    fn zero_elem() -> Self {
        0.0
    }
    fn one_elem() -> Self {
        1.0
    }
    fn is_zero_elem(&self) -> bool {
        *self == 0.0
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0.0).then(|| self / rhs)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        *self
    }
    fn re(&self) -> f64 {
        *self
    }
    fn im(&self) -> f64 {
        0.0
    }
    fn from_real(r: f64) -> Self {
        r
    }
    fn norm_sqr(&self) -> f64 {
        self * self
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
    fn within(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::ApproxReal(*self)
    }
    fn wrap_matrix(m: Matrix<Self>) -> DynMatrix {
        DynMatrix::Float(m)
    }
}

impl RealField for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs_value(&self) -> Self {
        f64::abs(*self)
    }
    fn from_f64_value(x: f64) -> Option<Self> {
        Some(x)
    }
}

impl Field for Complex64 {
    type Real = f64;
    const EXACT: bool = false;

    fn zero_elem() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_elem() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero_elem(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero_elem()).then(|| self / rhs)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn im(&self) -> f64 {
        self.im
    }
    fn from_real(r: f64) -> Self {
        Complex64::new(r, 0.0)
    }
    fn norm_sqr(&self) -> f64 {
        Complex64::norm_sqr(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn within(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::ApproxComplex(*self)
    }
    fn wrap_matrix(m: Matrix<Self>) -> DynMatrix {
        DynMatrix::ComplexFloat(m)
    }
}
