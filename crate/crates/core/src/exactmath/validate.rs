//! Structural checks for transition matrices, states and superoperators.

use std::fmt;
use std::str::FromStr;

use super::field::{Field, RealField};
use super::matrix::Matrix;
use super::ExactMathError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixProperty {
    /// Nonnegative entries, every column summing to one.
    Stochastic,
    /// `M^dagger M = I`.
    Unitary,
    /// Diagonal with entries 0 or 1.
    Projector,
    /// Hermitian, positive semidefinite, trace one.
    Density,
    /// A list of Kraus elements with `sum E^dagger E = I`.
    KrausSet,
}

impl FromStr for MatrixProperty {
    type Err = ExactMathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "stochastic" => Ok(Self::Stochastic),
            "unitary" => Ok(Self::Unitary),
            "projector" => Ok(Self::Projector),
            "density" => Ok(Self::Density),
            "kraus-set" => Ok(Self::KrausSet),
            other => Err(ExactMathError::UnknownProperty(other.to_string())),
        }
    }
}

impl fmt::Display for MatrixProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Stochastic => "stochastic",
            Self::Unitary => "unitary",
            Self::Projector => "projector",
            Self::Density => "density",
            Self::KrausSet => "kraus-set",
        })
    }
}

/// One failed condition. `matrix` indexes the input list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub matrix: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matrix {}: {}", self.matrix, self.message)
    }
}

/// Checks `kind` on every matrix (or, for [`MatrixProperty::KrausSet`], on
/// the list as a whole). An empty result means the property holds within
/// `tol`. A zero tolerance is only meaningful for exact fields.
pub fn validate_matrix<T: Field>(
    kind: MatrixProperty,
    mats: &[Matrix<T>],
    tol: f64,
) -> Result<Vec<Violation>, ExactMathError> {
    if !(tol >= 0.0) || !tol.is_finite() {
        return Err(ExactMathError::Domain(format!("invalid tolerance {tol}")));
    }
    if tol == 0.0 && !T::EXACT {
        return Err(ExactMathError::Domain(
            "zero tolerance requires exact scalars".into(),
        ));
    }
    let mut out = Vec::new();
    if kind == MatrixProperty::KrausSet {
        check_kraus(mats, tol, &mut out)?;
        return Ok(out);
    }
    for (idx, m) in mats.iter().enumerate() {
        let mut push = |message: String| out.push(Violation { matrix: idx, message });
        match kind {
            MatrixProperty::Stochastic => check_stochastic(m, tol, &mut push),
            MatrixProperty::Unitary => {
                require_square(m)?;
                check_unitary(m, tol, &mut push);
            }
            MatrixProperty::Projector => {
                require_square(m)?;
                check_projector(m, tol, &mut push);
            }
            MatrixProperty::Density => {
                require_square(m)?;
                check_density(m, tol, &mut push);
            }
            MatrixProperty::KrausSet => unreachable!(),
        }
    }
    Ok(out)
}

fn require_square<T: Field>(m: &Matrix<T>) -> Result<(), ExactMathError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(ExactMathError::Dimension(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )))
    }
}

fn real_tol<T: Field>(tol: f64) -> T::Real {
    <T::Real as RealField>::from_f64_value(tol).unwrap_or_else(<T::Real as Field>::zero_elem)
}

fn check_stochastic<T: Field>(m: &Matrix<T>, tol: f64, push: &mut impl FnMut(String)) {
    let neg_tol = real_tol::<T>(tol).neg_ref();
    let zero = <T::Real as Field>::zero_elem();
    for j in 0..m.cols() {
        let mut sum = T::zero_elem();
        for i in 0..m.rows() {
            let v = m.get(i, j);
            if !v.im().within(&zero, tol) {
                push(format!("entry ({}, {}) = {v} is not real", i + 1, j + 1));
            }
            if v.re() < neg_tol {
                push(format!("entry ({}, {}) = {v} is negative", i + 1, j + 1));
            }
            sum = sum.add_ref(v);
        }
        if !sum.within(&T::one_elem(), tol) {
            push(format!("column {} sums to {sum}", j + 1));
        }
    }
}

fn check_unitary<T: Field>(m: &Matrix<T>, tol: f64, push: &mut impl FnMut(String)) {
    let g = m.adjoint().mul_unchecked(m);
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { T::one_elem() } else { T::zero_elem() };
            if !g.get(i, j).within(&target, tol) {
                push(format!(
                    "columns {} and {} are not orthonormal (inner product {})",
                    i + 1,
                    j + 1,
                    g.get(i, j)
                ));
            }
        }
    }
}

fn check_projector<T: Field>(m: &Matrix<T>, tol: f64, push: &mut impl FnMut(String)) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            let ok = if i == j {
                v.within(&T::zero_elem(), tol) || v.within(&T::one_elem(), tol)
            } else {
                v.within(&T::zero_elem(), tol)
            };
            if !ok {
                push(format!("entry ({}, {}) = {v}", i + 1, j + 1));
            }
        }
    }
}

fn check_density<T: Field>(m: &Matrix<T>, tol: f64, push: &mut impl FnMut(String)) {
    let trace = (0..m.rows()).fold(T::zero_elem(), |acc, i| acc.add_ref(m.get(i, i)));
    if !trace.within(&T::one_elem(), tol) {
        push(format!("trace is {trace}"));
    }
    let mut hermitian = true;
    for i in 0..m.rows() {
        for j in i..m.cols() {
            if !m.get(i, j).within(&m.get(j, i).conj(), tol) {
                hermitian = false;
                push(format!("entries ({}, {}) and ({}, {}) are not conjugate", i + 1, j + 1, j + 1, i + 1));
            }
        }
    }
    if hermitian && !is_positive_semidefinite(m, tol) {
        push("not positive semidefinite".into());
    }
}

/// Positive semidefiniteness of a Hermitian matrix by symmetric Gaussian
/// elimination with diagonal pivoting. In exact fields with `tol = 0` the
/// answer is exact.
pub fn is_positive_semidefinite<T: Field>(m: &Matrix<T>, tol: f64) -> bool {
    let t = real_tol::<T>(tol);
    let neg_t = t.neg_ref();
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..m.rows()).collect();
    while !active.is_empty() {
        let mut best = active[0];
        for &i in &active {
            if a.get(i, i).re() > a.get(best, best).re() {
                best = i;
            }
        }
        let pivot = a.get(best, best).clone();
        if pivot.re() <= t {
            // Every remaining diagonal entry is (near) zero or negative.
            return active.iter().all(|&i| {
                a.get(i, i).re() >= neg_t
                    && active.iter().all(|&j| i == j || a.get(i, j).within(&T::zero_elem(), tol))
            });
        }
        active.retain(|&i| i != best);
        for &i in &active {
            let factor = match a.get(i, best).div_ref(&pivot) {
                Some(f) => f,
                None => return false,
            };
            if factor.is_zero_elem() {
                continue;
            }
            for &j in &active {
                let update = factor.mul_ref(a.get(best, j));
                let v = a.get(i, j).sub_ref(&update);
                a.set(i, j, v);
            }
        }
    }
    true
}

fn check_kraus<T: Field>(
    mats: &[Matrix<T>],
    tol: f64,
    out: &mut Vec<Violation>,
) -> Result<(), ExactMathError> {
    let Some(first) = mats.first() else {
        return Err(ExactMathError::Dimension("empty Kraus set".into()));
    };
    let (r, c) = (first.rows(), first.cols());
    if let Some(bad) = mats.iter().position(|m| m.rows() != r || m.cols() != c) {
        return Err(ExactMathError::Dimension(format!(
            "Kraus element {} has shape {}x{}, expected {r}x{c}",
            bad,
            mats[bad].rows(),
            mats[bad].cols()
        )));
    }
    let mut sum = Matrix::<T>::zeros(c, c);
    for m in mats {
        sum = sum.add(&m.adjoint().mul_unchecked(m))?;
    }
    for i in 0..c {
        for j in 0..c {
            let target = if i == j { T::one_elem() } else { T::zero_elem() };
            if !sum.get(i, j).within(&target, tol) {
                out.push(Violation {
                    matrix: 0,
                    message: format!(
                        "stacked columns {} and {} are not orthonormal (inner product {})",
                        i + 1,
                        j + 1,
                        sum.get(i, j)
                    ),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational as q;
    use num_rational::BigRational;

    fn rq(rows: &[&[(i64, i64)]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| q::ratio(n, d)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn px_matrix_is_stochastic() {
        let a = rq(&[
            &[(0, 1), (0, 1), (1, 2)],
            &[(1, 1), (0, 1), (1, 2)],
            &[(0, 1), (1, 1), (0, 1)],
        ]);
        assert!(validate_matrix(MatrixProperty::Stochastic, &[a], 0.0).unwrap().is_empty());
        let bad = rq(&[&[(1, 2), (0, 1)], &[(2, 5), (1, 1)]]);
        let v = validate_matrix(MatrixProperty::Stochastic, &[bad], 0.0).unwrap();
        assert_eq!(v.len(), 1);
        assert!(v[0].message.contains("9/10"));
    }

    #[test]
    fn reset_kraus_pair() {
        let e1 = rq(&[&[(1, 1), (0, 1)], &[(0, 1), (0, 1)]]);
        let e2 = rq(&[&[(0, 1), (1, 1)], &[(0, 1), (0, 1)]]);
        assert!(validate_matrix(MatrixProperty::KrausSet, &[e1.clone(), e2], 0.0)
            .unwrap()
            .is_empty());
        assert!(!validate_matrix(MatrixProperty::KrausSet, &[e1], 0.0).unwrap().is_empty());
    }

    #[test]
    fn shear_is_not_unitary() {
        let m = rq(&[&[(1, 1), (1, 1)], &[(0, 1), (1, 1)]]);
        assert!(!validate_matrix(MatrixProperty::Unitary, &[m], 0.0).unwrap().is_empty());
        let r = rq(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]]);
        assert!(validate_matrix(MatrixProperty::Unitary, &[r], 0.0).unwrap().is_empty());
    }

    #[test]
    fn density_checks() {
        let good = rq(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]);
        assert!(validate_matrix(MatrixProperty::Density, &[good], 0.0).unwrap().is_empty());
        // Every leading principal minor is nonnegative but the matrix is indefinite.
        let tricky = rq(&[
            &[(0, 1), (0, 1), (0, 1)],
            &[(0, 1), (1, 2), (1, 1)],
            &[(0, 1), (1, 1), (1, 2)],
        ]);
        assert!(!validate_matrix(MatrixProperty::Density, &[tricky], 0.0).unwrap().is_empty());
        let zero_pivot = rq(&[&[(0, 1), (1, 2)], &[(1, 2), (1, 1)]]);
        assert!(!is_positive_semidefinite(&zero_pivot, 0.0));
    }

    #[test]
    fn projector_and_errors() {
        let p = rq(&[&[(1, 1), (0, 1)], &[(0, 1), (0, 1)]]);
        assert!(validate_matrix(MatrixProperty::Projector, &[p], 0.0).unwrap().is_empty());
        let half = rq(&[&[(1, 2), (0, 1)], &[(0, 1), (0, 1)]]);
        assert_eq!(validate_matrix(MatrixProperty::Projector, &[half], 0.0).unwrap().len(), 1);
        let f = Matrix::<f64>::identity(2);
        assert!(validate_matrix(MatrixProperty::Unitary, &[f.clone()], 0.0).is_err());
        assert!(validate_matrix(MatrixProperty::Unitary, &[f], 1e-12).unwrap().is_empty());
        assert!("bogus".parse::<MatrixProperty>().is_err());
        assert_eq!("kraus-set".parse::<MatrixProperty>().unwrap(), MatrixProperty::KrausSet);
    }
}
