use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(zeta_ladder_cli::run(std::env::args_os()) as u8)
}
