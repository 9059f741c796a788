use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(fabius::cli::run())
}
