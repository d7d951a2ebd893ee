mod cli;

use clap::Parser;

fn main() {
    // Usage errors exit 1; verification failures exit 2 from run().
    let parsed = match cli::Cli::try_parse() {
        Ok(p) => p,
        Err(e) => {
            // Keep clap's rendering (help and version are not errors).
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    match cli::run(parsed) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
