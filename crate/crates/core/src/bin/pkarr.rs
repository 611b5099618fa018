use std::io::Write;
use std::panic;

use pkarr_core::cli::{run_command, EXIT_INTERNAL};

fn main() {
    let result = panic::catch_unwind(|| run_command(std::env::args_os()));
    let code = match result {
        Ok(out) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            out.exit_code
        }
        Err(_) => EXIT_INTERNAL,
    };
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
