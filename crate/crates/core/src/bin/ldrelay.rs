use std::process::ExitCode;

fn main() -> ExitCode {
    ldrelay::cli::main()
}
