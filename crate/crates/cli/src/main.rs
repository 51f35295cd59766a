use clap::Parser;
use hybrid_asym_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("hybrid-asym: {e}");
        std::process::exit(e.exit_code());
    }
}
