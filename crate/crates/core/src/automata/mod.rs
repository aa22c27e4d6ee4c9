//! Generalized, probabilistic, measure-once quantum and general quantum
//! finite automata over a finite alphabet of `char` symbols.
//!
//! Transition matrices act on column vectors from the left. Optional end
//! markers transform the initial object before the first symbol (left) and
//! the final object after the last one (right).

mod gfa;
mod machine;
mod quantum;

pub use gfa::{Gfa, Pfa};
pub use machine::{Automaton, ExactMachine, ApproxMachine, Machine, RunState};
pub use quantum::{Mcqfa, Qfa};

use std::fmt;

use thiserror::Error;

use crate::exactmath::{ExactMathError, Violation};

/// Float tolerance for structural validation.
pub const VALIDATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AutomatonError {
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(char),
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("automaton is invalid: {}", join(.0))]
    Invalid(Vec<ModelViolation>),
    #[error("expected a unary automaton, alphabet has {0} symbols")]
    NotUnary(usize),
    #[error(transparent)]
    Math(#[from] ExactMathError),
}

fn join(v: &[ModelViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A failed structural condition, tagged with the part of the machine it
/// concerns (for example `transition 'a'` or `initial`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelViolation {
    pub part: String,
    pub message: String,
}

impl ModelViolation {
    pub(crate) fn new(part: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            part: part.into(),
            message: message.into(),
        }
    }

    pub(crate) fn from_list(part: &str, list: Vec<Violation>) -> Vec<Self> {
        list.into_iter()
            .map(|v| Self::new(part, v.message))
            .collect()
    }
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.part, self.message)
    }
}

pub(crate) fn symbol_part(c: char) -> String {
    format!("transition '{c}'")
}

pub(crate) fn check_alphabet(alphabet: &[char], transitions: usize) -> Result<(), AutomatonError> {
    if alphabet.len() != transitions {
        return Err(AutomatonError::Malformed(format!(
            "{} symbols but {} transition entries",
            alphabet.len(),
            transitions
        )));
    }
    for (i, c) in alphabet.iter().enumerate() {
        if alphabet[..i].contains(c) {
            return Err(AutomatonError::Malformed(format!("symbol `{c}` listed twice")));
        }
    }
    Ok(())
}

pub(crate) fn symbol_indices(alphabet: &[char], word: &str) -> Result<Vec<usize>, AutomatonError> {
    word.chars()
        .map(|c| {
            alphabet
                .iter()
                .position(|&s| s == c)
                .ok_or(AutomatonError::UnknownSymbol(c))
        })
        .collect()
}

#[cfg(test)]
mod tests;
