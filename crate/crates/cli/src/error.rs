use cutpoint::analysis::AnalysisError;
use cutpoint::automata::{AutomatonError, ModelViolation};
use cutpoint::constructions::ConstructionError;
use cutpoint::exactmath::ExactMathError;
use cutpoint::langsem::LangError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed:\n{}", list(.0))]
    Invalid(Vec<ModelViolation>),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    NotFound(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

fn list(v: &[ModelViolation]) -> String {
    v.iter().map(|x| format!("  {x}")).collect::<Vec<_>>().join("\n")
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::NotFound(_) => 3,
        }
    }
}

impl From<AutomatonError> for CliError {
    fn from(e: AutomatonError) -> Self {
        match e {
            AutomatonError::Invalid(v) => CliError::Invalid(v),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<LangError> for CliError {
    fn from(e: LangError) -> Self {
        match e {
            LangError::Automaton(a) => a.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Automaton(a) => a.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Automaton(a) => a.into(),
            AnalysisError::Construction(c) => c.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ExactMathError> for CliError {
    fn from(e: ExactMathError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
