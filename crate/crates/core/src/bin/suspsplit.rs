use std::process::ExitCode;

fn main() -> ExitCode {
    suspsplit::cli::run()
}
