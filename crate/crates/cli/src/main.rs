use clap::Parser;
use semiformal_cli::{exit_code, run, Cli, RunConfig, RunError, EXIT_CONFIG};

fn main() {
    let cli = Cli::parse();
    let result = RunConfig::from_cli(cli).map_err(RunError::from).and_then(|cfg| {
        let outcome = run(&cfg)?;
        eprintln!("{}: {outcome} (report: {})", cfg.command.name(), cfg.output.display());
        Ok(outcome)
    });
    let code = match result {
        Ok(outcome) => exit_code(outcome),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    };
    std::process::exit(code);
}
