use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use timed_align::Variant;
use timed_align_cli::commands;
use timed_align_cli::report::{render, Format, Report};
use timed_align_cli::CliError;

/// Timed conformance checking with stamp and delay moves.
#[derive(Parser)]
#[command(name = "timed-align", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    /// Stamp moves only.
    Dt,
    /// Delay moves only.
    Dtheta,
    /// Stamp and delay moves.
    Dn,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Dt => Variant::StampOnly,
            VariantArg::Dtheta => Variant::DelayOnly,
            VariantArg::Dn => Variant::Mixed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check each case's activities and timing against a model.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        log: PathBuf,
    },
    /// Distance between two traces, given inline or as two cases of a log.
    Distance {
        #[arg(long, value_enum, default_value = "dn")]
        variant: VariantArg,
        /// Comma-separated timestamps.
        #[arg(long, requires = "b", conflicts_with_all = ["log", "pair"], allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, requires = "a", allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, requires = "pair")]
        log: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["CASE1", "CASE2"], requires = "log")]
        pair: Option<Vec<String>>,
    },
    /// Align each case to the closest model trace.
    Align {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        log: PathBuf,
    },
    /// Time the mixed-moves distance on random traces of the given lengths.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000,100000,1000000")]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Check { model, log } => commands::check(&model, &log),
        Command::Align { model, log } => commands::align_log(&model, &log),
        Command::Distance { variant, a, b, log, pair } => match (a, b, log, pair) {
            (Some(a), Some(b), None, None) => commands::distance_between(
                variant.into(),
                commands::parse_trace(&a, "--a")?,
                commands::parse_trace(&b, "--b")?,
            ),
            (None, None, Some(log), Some(pair)) => commands::distance_in_log(variant.into(), &log, &pair[0], &pair[1]),
            _ => Err(CliError::Usage("give either --a and --b, or --log and --pair".into())),
        },
        Command::Bench { lengths, seed, repeats } => commands::bench(&lengths, seed, repeats),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>".as_ref(), e)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (format, output) = (cli.format, cli.output.clone());
    let result = run(cli).and_then(|report| {
        emit(&render(&report, format)?, output.as_ref())?;
        if commands::nothing_aligned(&report) {
            Err(CliError::NothingAlignable)
        } else {
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("timed-align: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
