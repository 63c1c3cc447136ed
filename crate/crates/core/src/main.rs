use std::io;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use patinfo::commands::{self, AnalyzeArgs, CheckArgs, CompareArgs, GenerateArgs};

/// Combinatorial information content and entropy of symbol patterns.
#[derive(Parser)]
#[command(name = "patinfo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the information content of files or standard input.
    Analyze(AnalyzeArgs),
    /// Write a generated pattern to standard output.
    Generate(GenerateArgs),
    /// Compare M, S, T and K across the reference corpora.
    Compare(CompareArgs),
    /// Run the property suite.
    Check(CheckArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                commands::EXIT_USAGE as u8
            } else {
                0
            });
        }
    };
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let code = match &cli.command {
        Command::Analyze(a) => {
            let cache = commands::open_default_cache(&mut err);
            commands::cmd_analyze(a, &mut io::stdin().lock(), &mut out, &mut err, cache)
        }
        Command::Generate(a) => commands::cmd_generate(a, &mut out, &mut err),
        Command::Compare(a) => {
            let cache = commands::open_default_cache(&mut err);
            commands::cmd_compare(a, &mut out, &mut err, cache)
        }
        Command::Check(a) => {
            let cache = commands::open_default_cache(&mut err);
            commands::cmd_check(a, &mut out, &mut err, cache)
        }
    };
    ExitCode::from(code as u8)
}
