//! Command-line front end: automaton and descriptor documents, CSV output,
//! subcommands and the `verify` suites.

pub mod commands;
pub mod descriptor_doc;
pub mod document;
pub mod error;
pub mod verify;

use std::ffi::OsString;

use clap::Parser;
use serde_json::json;

pub use commands::{emit_csv, Cli};
pub use descriptor_doc::{parse_descriptor, serialize_descriptor};
pub use document::{parse_automaton, serialize_automaton};
pub use error::CliError;
pub use verify::{run_criterion, verify, verify_with, CriterionResult, Suite};

/// What a command produced. `report` goes to standard output and
/// `diagnostics` to standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub report: String,
    pub diagnostics: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutcome { exit_code: 0, report: text, diagnostics: String::new() }
            } else {
                CommandOutcome { exit_code: 2, report: String::new(), diagnostics: text }
            };
        }
    };
    let json_mode = cli.json;
    match commands::execute(cli.command) {
        Ok(rep) => {
            let report = if json_mode {
                format!("{}\n", serde_json::to_string_pretty(&rep.json).expect("reports are plain JSON"))
            } else {
                rep.text
            };
            let diagnostics = rep.notes.iter().map(|n| format!("note: {n}\n")).collect();
            CommandOutcome { exit_code: rep.exit_code, report, diagnostics }
        }
        Err(e) => {
            let report = if json_mode {
                let violations: Vec<String> = match &e {
                    CliError::Invalid(v) => v.iter().map(ToString::to_string).collect(),
                    _ => Vec::new(),
                };
                let body = json!({ "error": e.to_string(), "exit_code": e.exit_code(), "violations": violations });
                format!("{}\n", serde_json::to_string_pretty(&body).expect("reports are plain JSON"))
            } else {
                String::new()
            };
            CommandOutcome { exit_code: e.exit_code(), report, diagnostics: format!("error: {e}\n") }
        }
    }
}
