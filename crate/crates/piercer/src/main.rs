use std::process::ExitCode;

fn main() -> ExitCode {
    helly_piercer::cli::run(std::env::args_os())
}
