use std::process::ExitCode;

use firefly_cli::{execute, parse_config, Early};

fn main() -> ExitCode {
    let code = match parse_config(std::env::args_os()) {
        Ok(inv) => match execute(&inv) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Err(Early::Info(text)) => {
            print!("{text}");
            0
        }
        Err(Early::Error(e)) => {
            eprintln!("{e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
