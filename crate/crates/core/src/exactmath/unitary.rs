//! Completing a unit row vector to a unitary matrix.

use num_complex::Complex64;

use super::matrix::Matrix;
use super::ExactMathError;

const UNIT_TOL: f64 = 1e-9;

/// A unitary matrix whose first row is `first_row`.
///
/// The remaining rows come from Gram-Schmidt over the standard basis. At
/// each step the basis vector with the largest residual is taken (lowest
/// index on ties), which keeps the construction deterministic and well
/// conditioned.
pub fn complete_to_unitary(first_row: &[Complex64]) -> Result<Matrix<Complex64>, ExactMathError> {
    let n = first_row.len();
    if n == 0 {
        return Err(ExactMathError::Dimension("empty row".into()));
    }
    let norm: f64 = first_row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(ExactMathError::Domain(format!(
            "first row has norm {norm}, expected 1"
        )));
    }
    let mut basis: Vec<Vec<Complex64>> = vec![first_row.iter().map(|z| z / norm).collect()];
    let mut used = vec![false; n];
    while basis.len() < n {
        let mut best: Option<(usize, Vec<Complex64>, f64)> = None;
        for (k, taken) in used.iter().enumerate() {
            if *taken {
                continue;
            }
            let residual = residual_of_basis_vector(k, &basis);
            let size: f64 = residual.iter().map(|z| z.norm_sqr()).sum::<f64>();
            if best.as_ref().map_or(true, |(_, _, s)| size > *s) {
                best = Some((k, residual, size));
            }
        }
        let (k, mut v, size) = best.expect("fewer than n vectors chosen");
        used[k] = true;
        // Second orthogonalization pass for accuracy.
        for b in &basis {
            let c: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
        let len = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        debug_assert!(size > 0.0 && len > 0.0);
        basis.push(v.into_iter().map(|z| z / len).collect());
    }
    Matrix::new(n, n, basis.into_iter().flatten().collect())
}

fn residual_of_basis_vector(k: usize, basis: &[Vec<Complex64>]) -> Vec<Complex64> {
    let n = basis[0].len();
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[k] = Complex64::new(1.0, 0.0);
    for b in basis {
        // <b, e_k> = conj(b_k)
        let c = b[k].conj();
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi -= c * bi;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::validate::{validate_matrix, MatrixProperty};
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn is_unitary(m: &Matrix<Complex64>) -> bool {
        validate_matrix(MatrixProperty::Unitary, std::slice::from_ref(m), 1e-12)
            .unwrap()
            .is_empty()
    }

    #[test]
    fn basis_row() {
        let u = complete_to_unitary(&[c(1.0), c(0.0), c(0.0)]).unwrap();
        assert_eq!(u, Matrix::identity(3));
    }

    #[test]
    fn swap_completion() {
        let u = complete_to_unitary(&[c(0.0), c(1.0)]).unwrap();
        assert_eq!(u.row_vec(0), vec![c(0.0), c(1.0)]);
        assert_eq!(u.row_vec(1), vec![c(1.0), c(0.0)]);
    }

    #[test]
    fn transform_row_for_half_cutpoint() {
        // c * (-1/2, u) with u selecting tensor positions 0 and 3 of a 2-state machine
        let cc = 1.0 / (0.25f64 + 1.0).sqrt();
        let row = [c(-0.5 * cc), c(cc), c(0.0), c(0.0), c(0.0)];
        let u = complete_to_unitary(&row).unwrap();
        assert!(is_unitary(&u));
        for (a, b) in u.row_vec(0).iter().zip(&row) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_non_unit_rows() {
        assert!(complete_to_unitary(&[c(1.0), c(1.0)]).is_err());
        assert!(complete_to_unitary(&[]).is_err());
    }

    proptest! {
        #[test]
        fn completion_is_unitary(parts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..7)) {
            let row: Vec<Complex64> = parts.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
            let norm = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            prop_assume!(norm > 1e-3);
            let row: Vec<Complex64> = row.into_iter().map(|z| z / norm).collect();
            let u = complete_to_unitary(&row).unwrap();
            prop_assert!(is_unitary(&u));
        }
    }
}
