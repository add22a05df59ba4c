use clap::Parser;
use rmtlab_cli::{exit, exit_code, run, Cli};

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(true) => exit::OK,
        Ok(false) => exit::VERIFICATION,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}
