use clap::Parser;
use octupolar::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("octo: {e}");
        std::process::exit(e.exit_code());
    }
}
