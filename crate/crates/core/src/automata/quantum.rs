use crate::exactmath::{validate_matrix, Field, Matrix, MatrixProperty};

use super::gfa::check_square;
use super::{check_alphabet, symbol_part, AutomatonError, ModelViolation};

/// A measure-once quantum automaton: one unitary per symbol and a single
/// projective measurement onto the accepting basis states at the end.
///
/// Accepting states are 0-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Mcqfa<C> {
    alphabet: Vec<char>,
    unitaries: Vec<Matrix<C>>,
    initial: Matrix<C>,
    accept: Vec<usize>,
    left_marker: Option<Matrix<C>>,
    right_marker: Option<Matrix<C>>,
}

impl<C: Field> Mcqfa<C> {
    pub fn new(
        alphabet: Vec<char>,
        unitaries: Vec<Matrix<C>>,
        initial: Matrix<C>,
        accept: Vec<usize>,
    ) -> Result<Self, AutomatonError> {
        check_alphabet(&alphabet, unitaries.len())?;
        if initial.cols() != 1 {
            return Err(AutomatonError::Malformed("initial state must be a column".into()));
        }
        let n = initial.rows();
        for (c, m) in alphabet.iter().zip(&unitaries) {
            check_square(m, n, &symbol_part(*c))?;
        }
        let accept = normalize_accept(accept, n)?;
        Ok(Self {
            alphabet,
            unitaries,
            initial,
            accept,
            left_marker: None,
            right_marker: None,
        })
    }

    pub fn with_left_marker(mut self, m: Matrix<C>) -> Result<Self, AutomatonError> {
        check_square(&m, self.states(), "left marker")?;
        self.left_marker = Some(m);
        Ok(self)
    }

    pub fn with_right_marker(mut self, m: Matrix<C>) -> Result<Self, AutomatonError> {
        check_square(&m, self.states(), "right marker")?;
        self.right_marker = Some(m);
        Ok(self)
    }

    pub fn states(&self) -> usize {
        self.initial.rows()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn unitaries(&self) -> &[Matrix<C>] {
        &self.unitaries
    }

    pub fn initial(&self) -> &Matrix<C> {
        &self.initial
    }

    pub fn accept(&self) -> &[usize] {
        &self.accept
    }

    pub fn left_marker(&self) -> Option<&Matrix<C>> {
        self.left_marker.as_ref()
    }

    pub fn right_marker(&self) -> Option<&Matrix<C>> {
        self.right_marker.as_ref()
    }

    pub(crate) fn start_vector(&self) -> Matrix<C> {
        match &self.left_marker {
            Some(m) => m.mul_unchecked(&self.initial),
            None => self.initial.clone(),
        }
    }

    pub(crate) fn step_vector(&self, v: &Matrix<C>, symbol: usize) -> Matrix<C> {
        self.unitaries[symbol].mul_unchecked(v)
    }

    /// Probability of observing an accepting state after the right marker.
    pub(crate) fn accept_vector(&self, v: &Matrix<C>) -> C::Real {
        let w = match &self.right_marker {
            Some(m) => m.mul_unchecked(v),
            None => v.clone(),
        };
        self.accept
            .iter()
            .fold(<C::Real as Field>::zero_elem(), |acc, &j| {
                acc.add_ref(&w.get(j, 0).norm_sqr())
            })
    }

    pub fn violations(&self, tol: f64) -> Result<Vec<ModelViolation>, AutomatonError> {
        let mut out = Vec::new();
        for (c, m) in self.alphabet.iter().zip(&self.unitaries) {
            out.extend(ModelViolation::from_list(
                &symbol_part(*c),
                validate_matrix(MatrixProperty::Unitary, std::slice::from_ref(m), tol)?,
            ));
        }
        for (part, m) in [("left marker", &self.left_marker), ("right marker", &self.right_marker)] {
            if let Some(m) = m {
                out.extend(ModelViolation::from_list(
                    part,
                    validate_matrix(MatrixProperty::Unitary, std::slice::from_ref(m), tol)?,
                ));
            }
        }
        let norm = self.initial.frobenius_sqr();
        if !norm.within(&<C::Real as Field>::one_elem(), tol) {
            out.push(ModelViolation::new(
                "initial",
                format!("squared norm is {norm}, expected 1"),
            ));
        }
        Ok(out)
    }

    pub fn map_field<D: Field>(&self, f: impl Fn(&C) -> D + Copy) -> Mcqfa<D> {
        Mcqfa {
            alphabet: self.alphabet.clone(),
            unitaries: self.unitaries.iter().map(|m| m.map(f)).collect(),
            initial: self.initial.map(f),
            accept: self.accept.clone(),
            left_marker: self.left_marker.as_ref().map(|m| m.map(f)),
            right_marker: self.right_marker.as_ref().map(|m| m.map(f)),
        }
    }
}

fn normalize_accept(mut accept: Vec<usize>, n: usize) -> Result<Vec<usize>, AutomatonError> {
    accept.sort_unstable();
    accept.dedup();
    if let Some(&bad) = accept.iter().find(|&&j| j >= n) {
        return Err(AutomatonError::Malformed(format!(
            "accepting state {} out of range for {n} states",
            bad + 1
        )));
    }
    Ok(accept)
}

/// A general quantum automaton: each symbol acts as the superoperator
/// `rho -> sum_j E_j rho E_j^dagger`; the value is `Tr(P_a rho)` for the
/// diagonal projector onto the accepting states.
#[derive(Clone, Debug, PartialEq)]
pub struct Qfa<C> {
    alphabet: Vec<char>,
    kraus: Vec<Vec<Matrix<C>>>,
    initial: Matrix<C>,
    accept: Vec<usize>,
    left_marker: Option<Vec<Matrix<C>>>,
    right_marker: Option<Vec<Matrix<C>>>,
}

impl<C: Field> Qfa<C> {
    pub fn new(
        alphabet: Vec<char>,
        kraus: Vec<Vec<Matrix<C>>>,
        initial: Matrix<C>,
        accept: Vec<usize>,
    ) -> Result<Self, AutomatonError> {
        check_alphabet(&alphabet, kraus.len())?;
        let n = initial.rows();
        check_square(&initial, n, "initial density matrix")?;
        for (c, list) in alphabet.iter().zip(&kraus) {
            check_kraus_shapes(list, n, &symbol_part(*c))?;
        }
        let accept = normalize_accept(accept, n)?;
        Ok(Self {
            alphabet,
            kraus,
            initial,
            accept,
            left_marker: None,
            right_marker: None,
        })
    }

    /// Starts from the pure basis state `|q_index><q_index|` (0-based).
    pub fn with_basis_start(
        alphabet: Vec<char>,
        kraus: Vec<Vec<Matrix<C>>>,
        states: usize,
        index: usize,
        accept: Vec<usize>,
    ) -> Result<Self, AutomatonError> {
        if index >= states {
            return Err(AutomatonError::Malformed(format!(
                "initial state {} out of range for {states} states",
                index + 1
            )));
        }
        let mut rho = Matrix::zeros(states, states);
        rho.set(index, index, C::one_elem());
        Self::new(alphabet, kraus, rho, accept)
    }

    pub fn with_left_marker(mut self, list: Vec<Matrix<C>>) -> Result<Self, AutomatonError> {
        check_kraus_shapes(&list, self.states(), "left marker")?;
        self.left_marker = Some(list);
        Ok(self)
    }

    pub fn with_right_marker(mut self, list: Vec<Matrix<C>>) -> Result<Self, AutomatonError> {
        check_kraus_shapes(&list, self.states(), "right marker")?;
        self.right_marker = Some(list);
        Ok(self)
    }

    pub fn states(&self) -> usize {
        self.initial.rows()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn kraus(&self) -> &[Vec<Matrix<C>>] {
        &self.kraus
    }

    pub fn initial(&self) -> &Matrix<C> {
        &self.initial
    }

    pub fn accept(&self) -> &[usize] {
        &self.accept
    }

    pub fn left_marker(&self) -> Option<&[Matrix<C>]> {
        self.left_marker.as_deref()
    }

    pub fn right_marker(&self) -> Option<&[Matrix<C>]> {
        self.right_marker.as_deref()
    }

    pub(crate) fn start_density(&self) -> Matrix<C> {
        match &self.left_marker {
            Some(list) => apply_superoperator(list, &self.initial),
            None => self.initial.clone(),
        }
    }

    pub(crate) fn step_density(&self, rho: &Matrix<C>, symbol: usize) -> Matrix<C> {
        apply_superoperator(&self.kraus[symbol], rho)
    }

    pub(crate) fn accept_density(&self, rho: &Matrix<C>) -> C::Real {
        let r = match &self.right_marker {
            Some(list) => apply_superoperator(list, rho),
            None => rho.clone(),
        };
        self.accept
            .iter()
            .fold(<C::Real as Field>::zero_elem(), |acc, &j| acc.add_ref(&r.get(j, j).re()))
    }

    pub fn violations(&self, tol: f64) -> Result<Vec<ModelViolation>, AutomatonError> {
        let mut out = Vec::new();
        for (c, list) in self.alphabet.iter().zip(&self.kraus) {
            out.extend(ModelViolation::from_list(
                &symbol_part(*c),
                validate_matrix(MatrixProperty::KrausSet, list, tol)?,
            ));
        }
        for (part, m) in [("left marker", &self.left_marker), ("right marker", &self.right_marker)] {
            if let Some(list) = m {
                out.extend(ModelViolation::from_list(
                    part,
                    validate_matrix(MatrixProperty::KrausSet, list, tol)?,
                ));
            }
        }
        out.extend(ModelViolation::from_list(
            "initial",
            validate_matrix(MatrixProperty::Density, std::slice::from_ref(&self.initial), tol)?,
        ));
        Ok(out)
    }

    pub fn map_field<D: Field>(&self, f: impl Fn(&C) -> D + Copy) -> Qfa<D> {
        let map_list = |l: &Vec<Matrix<C>>| l.iter().map(|m| m.map(f)).collect::<Vec<_>>();
        Qfa {
            alphabet: self.alphabet.clone(),
            kraus: self.kraus.iter().map(map_list).collect(),
            initial: self.initial.map(f),
            accept: self.accept.clone(),
            left_marker: self.left_marker.as_ref().map(map_list),
            right_marker: self.right_marker.as_ref().map(map_list),
        }
    }
}

fn check_kraus_shapes<C: Field>(list: &[Matrix<C>], n: usize, part: &str) -> Result<(), AutomatonError> {
    if list.is_empty() {
        return Err(AutomatonError::Malformed(format!("{part} has no Kraus elements")));
    }
    for m in list {
        check_square(m, n, part)?;
    }
    Ok(())
}

/// `sum_j E_j rho E_j^dagger`.
pub fn apply_superoperator<C: Field>(kraus: &[Matrix<C>], rho: &Matrix<C>) -> Matrix<C> {
    let n = rho.rows();
    let mut out = Matrix::zeros(n, n);
    for e in kraus {
        let term = e.mul_unchecked(rho).mul_unchecked(&e.adjoint());
        out = out.add(&term).expect("same shape");
    }
    out
}
