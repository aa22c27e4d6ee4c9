//! Cutpoint languages and the descriptor languages used to characterize
//! one-state automata: solution, parity and indicator languages.

mod cutpoint;
mod descriptor;
mod unary;

pub use cutpoint::{bits_to_string, cut_member, enum_unary, CutpointMode, CutpointSpec, DEFAULT_EPSILON};
pub use descriptor::{
    desc_member, parikh, Coefficients, IndicatorDescriptor, LanguageDescriptor, LanguageForm,
    ParikhVector, ParityDescriptor, Relation, SolutionDescriptor, Threshold,
};
pub use unary::{named_member, UnaryRegularName};

use thiserror::Error;

use crate::automata::AutomatonError;
use crate::exactmath::ExactMathError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LangError {
    #[error("accepting values must be real, got {0}")]
    ComplexValue(String),
    #[error("cutpoint out of range: {0}")]
    CutpointRange(String),
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(char),
    #[error("invalid descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Math(#[from] ExactMathError),
}
