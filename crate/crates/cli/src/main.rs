use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<std::ffi::OsString> = std::env::args_os().collect();
    let out_path = ffl_cli::Cli::try_parse_out(&args);
    let outcome = ffl_cli::run_args(args);
    let mut text = outcome.json;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out_path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, &text) {
                eprintln!("cannot write {}: {e}", p.display());
                return ExitCode::from(ffl_cli::EXIT_CONFIG as u8);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    ExitCode::from(outcome.code as u8)
}
