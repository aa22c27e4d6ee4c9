use crate::exactmath::{validate_matrix, Field, Matrix, MatrixProperty, RealField};

use super::{check_alphabet, symbol_part, AutomatonError, ModelViolation};

/// A generalized finite automaton: arbitrary real matrices, accepting value
/// `f A_$ A_{w_k} ... A_{w_1} A_cent v_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gfa<R> {
    alphabet: Vec<char>,
    transitions: Vec<Matrix<R>>,
    initial: Matrix<R>,
    final_row: Matrix<R>,
    left_marker: Option<Matrix<R>>,
    right_marker: Option<Matrix<R>>,
}

impl<R: RealField> Gfa<R> {
    /// `transitions[i]` belongs to `alphabet[i]`. `initial` is a column and
    /// `final_row` a row vector.
    pub fn new(
        alphabet: Vec<char>,
        transitions: Vec<Matrix<R>>,
        initial: Matrix<R>,
        final_row: Matrix<R>,
    ) -> Result<Self, AutomatonError> {
        check_alphabet(&alphabet, transitions.len())?;
        let n = initial.rows();
        if initial.cols() != 1 {
            return Err(AutomatonError::Malformed("initial vector must be a column".into()));
        }
        if final_row.rows() != 1 || final_row.cols() != n {
            return Err(AutomatonError::Malformed(format!(
                "final vector must be a 1x{n} row"
            )));
        }
        for (c, m) in alphabet.iter().zip(&transitions) {
            check_square(m, n, &symbol_part(*c))?;
        }
        Ok(Self {
            alphabet,
            transitions,
            initial,
            final_row,
            left_marker: None,
            right_marker: None,
        })
    }

    pub fn with_left_marker(mut self, m: Matrix<R>) -> Result<Self, AutomatonError> {
        check_square(&m, self.states(), "left marker")?;
        self.left_marker = Some(m);
        Ok(self)
    }

    pub fn with_right_marker(mut self, m: Matrix<R>) -> Result<Self, AutomatonError> {
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

    pub fn transitions(&self) -> &[Matrix<R>] {
        &self.transitions
    }

    pub fn transition(&self, symbol: char) -> Option<&Matrix<R>> {
        self.alphabet
            .iter()
            .position(|&c| c == symbol)
            .map(|i| &self.transitions[i])
    }

    pub fn initial(&self) -> &Matrix<R> {
        &self.initial
    }

    pub fn final_row(&self) -> &Matrix<R> {
        &self.final_row
    }

    pub fn left_marker(&self) -> Option<&Matrix<R>> {
        self.left_marker.as_ref()
    }

    pub fn right_marker(&self) -> Option<&Matrix<R>> {
        self.right_marker.as_ref()
    }

    /// `A_cent v_0`.
    pub(crate) fn start_vector(&self) -> Matrix<R> {
        match &self.left_marker {
            Some(m) => m.mul_unchecked(&self.initial),
            None => self.initial.clone(),
        }
    }

    pub(crate) fn step_vector(&self, v: &Matrix<R>, symbol: usize) -> Matrix<R> {
        self.transitions[symbol].mul_unchecked(v)
    }

    /// `f A_$ v`.
    pub(crate) fn accept_vector(&self, v: &Matrix<R>) -> R {
        let w = match &self.right_marker {
            Some(m) => m.mul_unchecked(v),
            None => v.clone(),
        };
        self.final_row.mul_unchecked(&w).get(0, 0).clone()
    }

    /// The final row with the right marker folded in.
    pub fn effective_final(&self) -> Matrix<R> {
        match &self.right_marker {
            Some(m) => self.final_row.mul_unchecked(m),
            None => self.final_row.clone(),
        }
    }

    pub fn map_field<S: RealField>(&self, f: impl Fn(&R) -> S + Copy) -> Gfa<S> {
        Gfa {
            alphabet: self.alphabet.clone(),
            transitions: self.transitions.iter().map(|m| m.map(f)).collect(),
            initial: self.initial.map(f),
            final_row: self.final_row.map(f),
            left_marker: self.left_marker.as_ref().map(|m| m.map(f)),
            right_marker: self.right_marker.as_ref().map(|m| m.map(f)),
        }
    }
}

pub(crate) fn check_square<T: Field>(m: &Matrix<T>, n: usize, part: &str) -> Result<(), AutomatonError> {
    if m.rows() != n || m.cols() != n {
        return Err(AutomatonError::Malformed(format!(
            "{part} is {}x{}, expected {n}x{n}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// A GFA whose matrices are left-stochastic, whose initial vector is a
/// distribution and whose final vector is 0/1 (or in `[0, 1]` when a right
/// marker is present).
#[derive(Clone, Debug, PartialEq)]
pub struct Pfa<R> {
    inner: Gfa<R>,
}

impl<R: RealField> Pfa<R> {
    /// Validates the stochastic constraints within `tol`.
    pub fn new(gfa: Gfa<R>, tol: f64) -> Result<Self, AutomatonError> {
        let violations = pfa_violations(&gfa, tol)?;
        if violations.is_empty() {
            Ok(Self { inner: gfa })
        } else {
            Err(AutomatonError::Invalid(violations))
        }
    }

    /// Skips validation; [`Pfa::violations`] reports problems later.
    pub fn new_unchecked(gfa: Gfa<R>) -> Self {
        Self { inner: gfa }
    }

    pub fn as_gfa(&self) -> &Gfa<R> {
        &self.inner
    }

    pub fn into_gfa(self) -> Gfa<R> {
        self.inner
    }

    pub fn violations(&self, tol: f64) -> Result<Vec<ModelViolation>, AutomatonError> {
        pfa_violations(&self.inner, tol)
    }
}

pub(crate) fn pfa_violations<R: RealField>(
    g: &Gfa<R>,
    tol: f64,
) -> Result<Vec<ModelViolation>, AutomatonError> {
    let mut out = Vec::new();
    let stochastic = MatrixProperty::Stochastic;
    for (c, m) in g.alphabet.iter().zip(&g.transitions) {
        out.extend(ModelViolation::from_list(
            &symbol_part(*c),
            validate_matrix(stochastic, std::slice::from_ref(m), tol)?,
        ));
    }
    for (part, m) in [("left marker", &g.left_marker), ("right marker", &g.right_marker)] {
        if let Some(m) = m {
            out.extend(ModelViolation::from_list(
                part,
                validate_matrix(stochastic, std::slice::from_ref(m), tol)?,
            ));
        }
    }
    out.extend(ModelViolation::from_list(
        "initial",
        validate_matrix(stochastic, std::slice::from_ref(&g.initial), tol)?,
    ));
    let zero = R::zero_elem();
    let one = R::one_elem();
    let tol_r = R::from_f64_value(tol).unwrap_or_else(R::zero_elem);
    for (j, v) in g.final_row.entries().iter().enumerate() {
        let ok = if g.right_marker.is_none() {
            v.within(&zero, tol) || v.within(&one, tol)
        } else {
            *v >= zero.sub_ref(&tol_r) && *v <= one.add_ref(&tol_r)
        };
        if !ok {
            let expected = if g.right_marker.is_none() { "0 or 1" } else { "in [0, 1]" };
            out.push(ModelViolation::new(
                "final",
                format!("entry {} = {v} is not {expected}", j + 1),
            ));
        }
    }
    Ok(out)
}
