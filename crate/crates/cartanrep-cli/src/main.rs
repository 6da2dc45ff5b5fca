//! Binary entry point. Argument errors exit 2 (clap's default), check
//! failures exit 1, success exits 0.

use clap::Parser;

fn main() {
    let cli = cartanrep_cli::Cli::parse();
    std::process::exit(cartanrep_cli::run(&cli));
}
