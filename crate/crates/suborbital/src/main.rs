use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = suborbital::cli::run(std::env::args_os());
    print!("{}", outcome.payload);
    eprint!("{}", outcome.diagnostics);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.exit_code as u8)
}
