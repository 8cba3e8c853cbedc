use std::process::ExitCode;

fn main() -> ExitCode {
    theta_cycles::cli::run()
}
