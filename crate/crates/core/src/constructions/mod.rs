//! Concrete automaton families, the exclusive-to-zero transform and the
//! two complete classifiers: unary 2-state PFAs and 1-state GFAs.

mod one_state;
mod px;
mod quantum;
mod rotation;
mod two_state;

pub use one_state::{build_1state, decompose_1state, Direction, OneStateGfaSpec, OneStateMode};
pub use px::{px, px_closed, px_params, PxParams};
pub use quantum::{exclusive_to_zero, exclusive_value_exact, modn_mcqfa, ExclusiveTransform};
pub use rotation::{rotation, rotation_cosines, ChebyshevCosines, PythTriple, RotationModel};
pub use two_state::{classify_2state, classify_2state_pfa, TwoStateCase, TwoStatePfaAnalysis};

use thiserror::Error;

use crate::automata::AutomatonError;
use crate::exactmath::ExactMathError;
use crate::langsem::LangError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("classification anomaly: {0}")]
    Anomaly(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error(transparent)]
    Math(#[from] ExactMathError),
}
