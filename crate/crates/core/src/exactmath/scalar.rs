//! Runtime-tagged scalars and matrices.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use super::field::{Field, GaussianRational};
use super::matrix::Matrix;
use super::rational as q;
use super::ExactMathError;

/// A number whose exactness is known at runtime.
///
/// Binary operations require both sides to share exactness. Exact reals and
/// exact complex numbers combine (the result is complex), as do binary64
/// reals and complex numbers; an exact value meets an approximate one only
/// after an explicit [`Scalar::to_approx`].
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    ExactReal(BigRational),
    ExactComplex(GaussianRational),
    ApproxReal(f64),
    ApproxComplex(Complex64),
}

impl Scalar {
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::ExactReal(_) | Scalar::ExactComplex(_))
    }

    /// True when the value has no imaginary part.
    pub fn is_real(&self) -> bool {
        match self {
            Scalar::ExactReal(_) | Scalar::ApproxReal(_) => true,
            Scalar::ExactComplex(z) => z.is_real(),
            Scalar::ApproxComplex(z) => z.im == 0.0,
        }
    }

    /// The exact real value, if this is an exact real number (a Gaussian
    /// rational with zero imaginary part counts).
    pub fn as_exact_real(&self) -> Option<BigRational> {
        match self {
            Scalar::ExactReal(r) => Some(r.clone()),
            Scalar::ExactComplex(z) if z.is_real() => Some(z.re.clone()),
            _ => None,
        }
    }

    /// Real part as binary64.
    pub fn to_f64(&self) -> f64 {
        self.to_c64().re
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::ExactReal(r) => r.to_c64(),
            Scalar::ExactComplex(z) => z.to_c64(),
            Scalar::ApproxReal(x) => Complex64::new(*x, 0.0),
            Scalar::ApproxComplex(z) => *z,
        }
    }

    /// Rounds exact values to binary64; approximate values pass through.
    pub fn to_approx(&self) -> Scalar {
        match self {
            Scalar::ExactReal(r) => Scalar::ApproxReal(q::to_f64(r)),
            Scalar::ExactComplex(z) => Scalar::ApproxComplex(z.to_c64()),
            other => other.clone(),
        }
    }

    fn combine(
        &self,
        rhs: &Scalar,
        real: impl Fn(&BigRational, &BigRational) -> Option<BigRational>,
        complex: impl Fn(&GaussianRational, &GaussianRational) -> Option<GaussianRational>,
        approx: impl Fn(Complex64, Complex64) -> Option<Complex64>,
    ) -> Result<Scalar, ExactMathError> {
        use Scalar::*;
        let out = match (self, rhs) {
            (ExactReal(a), ExactReal(b)) => real(a, b).map(ExactReal),
            (ExactReal(_) | ExactComplex(_), ExactReal(_) | ExactComplex(_)) => {
                complex(&self.gaussian(), &rhs.gaussian()).map(ExactComplex)
            }
            (ApproxReal(a), ApproxReal(b)) => {
                approx(Complex64::new(*a, 0.0), Complex64::new(*b, 0.0)).map(|z| ApproxReal(z.re))
            }
            (ApproxReal(_) | ApproxComplex(_), ApproxReal(_) | ApproxComplex(_)) => {
                approx(self.to_c64(), rhs.to_c64()).map(ApproxComplex)
            }
            _ => return Err(ExactMathError::MixedScalars),
        };
        out.ok_or(ExactMathError::DivisionByZero)
    }

    fn gaussian(&self) -> GaussianRational {
        match self {
            Scalar::ExactReal(r) => GaussianRational::real(r.clone()),
            Scalar::ExactComplex(z) => z.clone(),
            _ => unreachable!("only called on exact scalars"),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, ExactMathError> {
        self.combine(
            rhs,
            |a, b| Some(q::add(a, b)),
            |a, b| Some(a.add_ref(b)),
            |a, b| Some(a + b),
        )
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, ExactMathError> {
        self.combine(
            rhs,
            |a, b| Some(q::sub(a, b)),
            |a, b| Some(a.sub_ref(b)),
            |a, b| Some(a - b),
        )
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, ExactMathError> {
        self.combine(
            rhs,
            |a, b| Some(q::mul(a, b)),
            |a, b| Some(a.mul_ref(b)),
            |a, b| Some(a * b),
        )
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ExactMathError> {
        self.combine(
            rhs,
            q::div,
            |a, b| a.div_ref(b),
            |a, b| Field::div_ref(&a, &b),
        )
    }

    /// Sign of a real scalar: -1, 0 or 1. `None` for complex values.
    pub fn signum(&self) -> Option<i8> {
        if !self.is_real() {
            return None;
        }
        Some(match self.as_exact_real() {
            Some(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
            None => {
                let x = self.to_f64();
                if x > 0.0 {
                    1
                } else if x < 0.0 {
                    -1
                } else {
                    0
                }
            }
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::ExactReal(r) => write!(f, "{r}"),
            Scalar::ExactComplex(z) => write!(f, "{z}"),
            Scalar::ApproxReal(x) => write!(f, "{x:?}"),
            Scalar::ApproxComplex(z) => write!(f, "[{:?}, {:?}]", z.re, z.im),
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::ExactReal(r)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::ApproxReal(x)
    }
}

/// A matrix whose entry field is chosen at runtime. Entries are always
/// homogeneous.
#[derive(Clone, Debug, PartialEq)]
pub enum DynMatrix {
    Rational(Matrix<BigRational>),
    ComplexRational(Matrix<GaussianRational>),
    Float(Matrix<f64>),
    ComplexFloat(Matrix<Complex64>),
}

macro_rules! dispatch {
    ($self:expr, $m:ident => $body:expr) => {
        match $self {
            DynMatrix::Rational($m) => $body,
            DynMatrix::ComplexRational($m) => $body,
            DynMatrix::Float($m) => $body,
            DynMatrix::ComplexFloat($m) => $body,
        }
    };
}

impl DynMatrix {
    pub fn rows(&self) -> usize {
        dispatch!(self, m => m.rows())
    }

    pub fn cols(&self) -> usize {
        dispatch!(self, m => m.cols())
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        dispatch!(self, m => m.get(i, j).to_scalar())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DynMatrix::Rational(_) | DynMatrix::ComplexRational(_))
    }

    /// All entries, row by row.
    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

impl fmt::Display for DynMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        dispatch!(self, m => write!(f, "{m}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixing_requires_explicit_conversion() {
        let exact = Scalar::ExactReal(q::ratio(1, 2));
        let approx = Scalar::ApproxReal(0.25);
        assert_eq!(exact.checked_add(&approx), Err(ExactMathError::MixedScalars));
        let sum = exact.to_approx().checked_add(&approx).unwrap();
        assert_eq!(sum, Scalar::ApproxReal(0.75));
    }

    #[test]
    fn exact_real_and_complex_combine() {
        let a = Scalar::ExactReal(q::ratio(1, 2));
        let i = Scalar::ExactComplex(GaussianRational::new(q::from_int(0), q::from_int(1)));
        let p = a.checked_mul(&i).unwrap();
        assert_eq!(
            p,
            Scalar::ExactComplex(GaussianRational::new(q::from_int(0), q::ratio(1, 2)))
        );
        assert!(!p.is_real());
        assert_eq!(a.checked_div(&Scalar::ExactReal(q::from_int(0))), Err(ExactMathError::DivisionByZero));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::ExactReal(q::ratio(-7, 25)).to_string(), "-7/25");
        assert_eq!(Scalar::ApproxReal(1.0).to_string(), "1.0");
        assert_eq!(Scalar::ExactReal(q::ratio(3, 5)).signum(), Some(1));
    }
}
