use std::process::ExitCode;

fn main() -> ExitCode {
    unit_lindley::cli::main_entry()
}
