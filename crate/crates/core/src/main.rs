use clap::Parser;

use klein_poincare::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
