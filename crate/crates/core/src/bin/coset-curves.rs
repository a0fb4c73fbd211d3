use clap::Parser;
use coset_curves::harness::{execute, Cli};

fn main() {
    std::process::exit(execute(Cli::parse()));
}
