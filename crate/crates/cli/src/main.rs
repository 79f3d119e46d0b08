use std::process::ExitCode;

fn main() -> ExitCode {
    trinotool::cli::run(std::env::args_os())
}
