use clap::Parser;
use cvqkd_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("cvqkd: {e}");
        std::process::exit(e.exit_code());
    }
}
