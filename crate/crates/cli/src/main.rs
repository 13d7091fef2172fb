use std::process::ExitCode;

use clap::Parser;
use logterm_cli::{run, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers > 0 {
        // only fails if a pool was already installed
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global();
    }
    match run(&cli) {
        Ok(outcome) => {
            if let Command::Selftest { .. } = cli.command {
                if let Some(criteria) = outcome.json["criteria"].as_array() {
                    for c in criteria {
                        eprintln!(
                            "[{}] criterion {}: {} ({})",
                            if c["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
                            c["id"],
                            c["name"].as_str().unwrap_or(""),
                            c["detail"].as_str().unwrap_or("")
                        );
                    }
                }
            }
            let text = serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n";
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
