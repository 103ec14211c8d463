mod args;
mod commands;
mod output;
mod pipeline;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn run(cli: &Cli) -> anyhow::Result<u8> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()?;
    }
    match &cli.command {
        Command::Subsample(a) => commands::subsample_cmd(a).map(|()| 0),
        Command::Balance(a) => commands::balance_cmd(a).map(|()| 0),
        Command::Train(a) => commands::train_cmd(a).map(|()| 0),
        Command::Eval(a) => commands::eval_cmd(a).map(|()| 0),
        Command::Grid(a) => commands::grid_cmd(a),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors by itself
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(pipeline::exit_code(&err))
        }
    }
}
