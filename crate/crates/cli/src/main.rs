use clap::Parser;
use pwave_cli::config::{Flags, RunConfig};
use pwave_cli::error::exit;

fn main() {
    let flags = Flags::parse();
    let code = match RunConfig::from_flags(flags).and_then(|cfg| pwave_cli::run(&cfg)) {
        Ok(()) => exit::SUCCESS,
        Err(e) => {
            eprintln!("pwave: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
