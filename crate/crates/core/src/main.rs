use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(hasse::cli::run(std::env::args_os()) as u8)
}
