use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = gradedpi_cli::dispatch(std::env::args_os());
    let written = if code == gradedpi_cli::EXIT_USAGE {
        std::io::stderr().write_all(text.as_bytes())
    } else {
        std::io::stdout().write_all(text.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(gradedpi_cli::EXIT_USAGE as u8);
    }
    ExitCode::from(code as u8)
}
