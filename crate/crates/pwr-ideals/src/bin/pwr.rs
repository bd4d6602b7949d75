use std::process::ExitCode;

fn main() -> ExitCode {
    pwr_ideals::cli::main()
}
