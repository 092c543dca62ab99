use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(tprod_cli::run(std::env::args_os()))
}
