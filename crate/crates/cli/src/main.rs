mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Outcome;

#[derive(Debug, Parser)]
#[command(name = "picmod", version, about = "Picard groups, Verlinde numbers and Dynkin indices of simple groups")]
struct Cli {
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Rejected: give the rank inside the type token (E8, A3, ...).
    #[arg(long, global = true, hide = true)]
    rank: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Markdown,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Picard group of the moduli space of semistable bundles.
    Report {
        /// Type token such as E8, A3, G2.
        #[arg(long = "type", value_name = "TYPE")]
        lie: String,
        #[arg(long)]
        genus: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Dimension of the space of conformal blocks.
    Verlinde {
        #[arg(long = "type", value_name = "TYPE")]
        lie: String,
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        level: u32,
        /// Starting working precision in bits; doubled until the result is certified.
        #[arg(long, default_value_t = picmod::verlinde::DEFAULT_PRECISION_BITS,
              value_parser = clap::value_parser!(u32).range(16..=picmod::verlinde::MAX_PRECISION_BITS as i64))]
        precision_bits: u32,
        /// Maximum number of worker threads.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Dynkin index of an irreducible representation.
    Index {
        #[arg(long = "type", value_name = "TYPE")]
        lie: String,
        /// Highest weight in fundamental-weight coordinates, e.g. 1,0,0.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
        weight: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Weighted projective spaces.
    Wps {
        #[command(subcommand)]
        action: WpsAction,
    },
    /// Regenerate a reference table.
    Tables {
        #[arg(value_enum)]
        table: TableName,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Run the acceptance battery.
    Selftest {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum WpsAction {
    /// Dimension of the degree-d piece of the weighted polynomial ring.
    Hilbert {
        #[command(flatten)]
        source: WpsSource,
        #[arg(long)]
        degree: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Degree of the generator of the Picard group.
    Generator {
        #[command(flatten)]
        source: WpsSource,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct WpsSource {
    /// Explicit weights, e.g. 1,1,2.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    weights: Option<Vec<u64>>,
    /// Use the genus-one model (1, comarks) of this type.
    #[arg(long = "type", value_name = "TYPE")]
    lie: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    Prop23,
    Wps,
    Comarks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::EXIT_USAGE } else { 0 });
        }
    };

    let outcome = if cli.rank.is_some() {
        Outcome::usage(
            cli.command.name(),
            "--rank is not accepted; give the rank inside the type token, e.g. --type E8",
        )
    } else {
        commands::run(&cli.command)
    };

    if let Some(body) = &outcome.stdout {
        let written = match &cli.out {
            Some(path) => std::fs::write(path, body),
            None => std::io::stdout().write_all(body.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("{}", render::error_object(cli.command.name(), "io", &e.to_string()));
            return ExitCode::from(commands::EXIT_DOMAIN);
        }
    }
    if let Some(err) = &outcome.stderr {
        eprintln!("{err}");
    }
    ExitCode::from(outcome.code)
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Report { .. } => "report",
            Command::Verlinde { .. } => "verlinde",
            Command::Index { .. } => "index",
            Command::Wps { action: WpsAction::Hilbert { .. } } => "wps hilbert",
            Command::Wps { action: WpsAction::Generator { .. } } => "wps generator",
            Command::Tables { .. } => "tables",
            Command::Selftest { .. } => "selftest",
        }
    }
}
