use std::process::ExitCode;

use clap::Parser;

use rdk_cli::{Cli, RunConfig, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_max_q = std::env::var("RDK_MAX_Q").ok();
    match RunConfig::from_cli(cli, env_max_q.as_deref()) {
        Ok(config) => ExitCode::from(rdk_cli::run(&config)),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
