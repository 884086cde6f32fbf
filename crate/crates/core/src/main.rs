use clap::Parser;

use catalan_zi::cli::{run_and_write, Cli, RunConfig};

fn main() {
    let cli = Cli::parse();
    let config = RunConfig::from_cli(cli);
    std::process::exit(run_and_write(&config));
}
