use std::io::Write;

fn main() {
    let outcome = cutpoint_cli::run_command(std::env::args_os());
    print!("{}", outcome.report);
    eprint!("{}", outcome.diagnostics);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.exit_code);
}
