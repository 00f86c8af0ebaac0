use std::process::ExitCode;

fn main() -> ExitCode {
    distauto::cli::main()
}
