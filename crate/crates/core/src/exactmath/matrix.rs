//! Dense row-major matrices over a [`Field`].

use std::fmt;

use super::field::Field;
use super::ExactMathError;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, ExactMathError> {
        if rows == 0 || cols == 0 {
            return Err(ExactMathError::Dimension(format!(
                "matrix must be nonempty, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(ExactMathError::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn from_vec_unchecked(rows: usize, cols: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, ExactMathError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactMathError::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Column vector.
    pub fn column(entries: Vec<T>) -> Result<Self, ExactMathError> {
        let n = entries.len();
        Self::new(n, 1, entries)
    }

    /// Row vector.
    pub fn row(entries: Vec<T>) -> Result<Self, ExactMathError> {
        let n = entries.len();
        Self::new(1, n, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero_elem(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one_elem();
        }
        m
    }

    /// The standard basis column vector `e_index` (0-based).
    pub fn basis(n: usize, index: usize) -> Self {
        let mut m = Self::zeros(n, 1);
        m.data[index] = T::one_elem();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn row_vec(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Self) -> Self {
        let (n, m, p) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![T::zero_elem(); n * p];
        for i in 0..n {
            for l in 0..m {
                let a = &self.data[i * m + l];
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..p {
                    let b = &rhs.data[l * p + j];
                    if !b.is_zero_elem() {
                        out[i * p + j] = out[i * p + j].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Self::from_vec_unchecked(n, p, out)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self, ExactMathError> {
        if self.cols != rhs.rows {
            return Err(ExactMathError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self, ExactMathError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(ExactMathError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self::from_vec_unchecked(self.rows, self.cols, data))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ExactMathError> {
        self.zip_with(rhs, T::add_ref)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, ExactMathError> {
        self.zip_with(rhs, T::sub_ref)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.mul_ref(c))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self::from_vec_unchecked(self.cols, self.rows, data)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).conj());
            }
        }
        Self::from_vec_unchecked(self.cols, self.rows, data)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(T::conj)
    }

    pub fn trace(&self) -> Result<T, ExactMathError> {
        if !self.is_square() {
            return Err(ExactMathError::Dimension("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).fold(T::zero_elem(), |acc, i| acc.add_ref(self.get(i, i))))
    }

    /// Kronecker product; block `(i, j)` is `self[i, j] * rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut data = vec![T::zero_elem(); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero_elem() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        data[(i * rhs.rows + k) * cols + j * rhs.cols + l] = a.mul_ref(rhs.get(k, l));
                    }
                }
            }
        }
        Self::from_vec_unchecked(rows, cols, data)
    }

    /// `self^k` by repeated squaring; `k = 0` gives the identity.
    pub fn pow(&self, k: u64) -> Result<Self, ExactMathError> {
        if !self.is_square() {
            return Err(ExactMathError::Dimension(format!(
                "power of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(T::matrix_power(self, k))
    }

    /// Direct sum `diag(self, rhs)`.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let rows = self.rows + rhs.rows;
        let cols = self.cols + rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Squared Euclidean norm of all entries.
    pub fn frobenius_sqr(&self) -> T::Real {
        self.data
            .iter()
            .fold(<T::Real as Field>::zero_elem(), |acc, v| acc.add_ref(&v.norm_sqr()))
    }

    /// Entrywise `|self - other| <= tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.within(b, tol))
    }
}

impl<T: Field> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational as q;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn rq(rows: &[&[(i64, i64)]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| q::ratio(n, d)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn rotation_345() -> Matrix<BigRational> {
        rq(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]])
    }

    #[test]
    fn rotation_square() {
        let r2 = rotation_345().pow(2).unwrap();
        assert_eq!(r2.get(0, 0), &q::ratio(-7, 25));
        assert_eq!(r2.get(1, 0), &q::ratio(24, 25));
    }

    #[test]
    fn zeroth_power_is_identity() {
        assert_eq!(rotation_345().pow(0).unwrap(), Matrix::identity(2));
        let f = Matrix::<f64>::from_rows(vec![vec![2.0, 1.0], vec![0.0, 3.0]]).unwrap();
        assert_eq!(f.pow(0).unwrap(), Matrix::identity(2));
        assert_eq!(f.pow(3).unwrap(), f.matmul(&f).unwrap().matmul(&f).unwrap());
    }

    #[test]
    fn px_half_squared_hits_one() {
        let a = rq(&[
            &[(0, 1), (0, 1), (1, 2)],
            &[(1, 1), (0, 1), (1, 2)],
            &[(0, 1), (1, 1), (0, 1)],
        ]);
        assert_eq!(a.pow(2).unwrap().get(2, 0), &q::from_int(1));
    }

    #[test]
    fn non_square_power_fails() {
        let m = Matrix::<f64>::zeros(2, 3);
        assert!(matches!(m.pow(2), Err(ExactMathError::Dimension(_))));
        assert!(m.matmul(&m).is_err());
        assert!(Matrix::<f64>::new(2, 2, vec![1.0]).is_err());
    }

    #[test]
    fn kron_basics() {
        let i2 = Matrix::<BigRational>::identity(2);
        assert_eq!(i2.kron(&i2), Matrix::identity(4));
        let a = rq(&[&[(3, 1)]]);
        let b = rotation_345();
        assert_eq!(a.kron(&b), b.scale(&q::from_int(3)));
    }

    #[test]
    fn kron_tensor_square_tracks_cos_squared() {
        let r = rotation_345();
        let rr = r.conj().kron(&r);
        let e1: Matrix<BigRational> = Matrix::basis(2, 0);
        let mut v = e1.kron(&e1);
        for k in 1..=10u64 {
            v = rr.matmul(&v).unwrap();
            let cos = r.pow(k).unwrap().get(0, 0).clone();
            assert_eq!(v.get(0, 0), &q::mul(&cos, &cos));
        }
    }

    #[test]
    fn large_exact_power_matches_repeated_product() {
        let r = rq(&[&[(5, 13), (-12, 13)], &[(12, 13), (5, 13)]]);
        let fast = r.pow(157).unwrap();
        let slow = crate::exactmath::field::square_and_multiply(&r, 157);
        assert_eq!(fast, slow);
    }

    fn arb_small_matrix(n: usize) -> impl Strategy<Value = Matrix<BigRational>> {
        prop::collection::vec((-6i64..7, 1i64..6), n * n).prop_map(move |v| {
            Matrix::new(n, n, v.into_iter().map(|(a, b)| q::ratio(a, b)).collect()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn power_is_additive(m in arb_small_matrix(3), j in 0u64..7, k in 0u64..7) {
            let lhs = m.pow(j + k).unwrap();
            let rhs = m.pow(j).unwrap().matmul(&m.pow(k).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kron_mixed_product(a in arb_small_matrix(2), b in arb_small_matrix(2),
                              c in arb_small_matrix(2), d in arb_small_matrix(2)) {
            let lhs = a.kron(&b).matmul(&c.kron(&d)).unwrap();
            let rhs = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
