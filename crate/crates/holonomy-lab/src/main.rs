use clap::Parser;
use holonomy_lab::cli::{run, Cli};

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    let code = run(cli)?;
    std::process::exit(code);
}
