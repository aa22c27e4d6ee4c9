//! Regularity and context-freeness of solution languages, and finite
//! witnesses for separation, aperiodicity and density statements.

mod chomsky;
mod density;
mod separation;

pub use chomsky::{chomsky_classify, chomsky_classify_gfa, decimate, ChomskyVerdict};
pub use density::{density_report, DensityReport};
pub use separation::{aperiodicity_check, px_separation, separate, PxSeparation, SeparationWitness};

use thiserror::Error;

use crate::automata::AutomatonError;
use crate::constructions::ConstructionError;
use crate::exactmath::ExactMathError;
use crate::langsem::LangError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("invalid input: {0}")]
    Domain(String),
    #[error("exact arithmetic required: {0}")]
    NotExact(String),
    #[error("no verified witness: {0}")]
    Anomaly(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Math(#[from] ExactMathError),
}
