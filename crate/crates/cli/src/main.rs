mod cases;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qsi_core::catalog::Catalog;
use qsi_core::qsi::SearchOptions;
use qsi_core::Error;

use commands::{Report, UsageError};

#[derive(Parser, Debug)]
#[command(name = "qsi", version, about = "Character-theoretic checks on finite permutation groups")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group whose subgroup lattice is enumerated.
    #[arg(long, global = true, default_value_t = 30_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_group_order: u64,
    /// Disable the subgroup prefilters (verdicts are unchanged, runs are slower).
    #[arg(long, global = true)]
    no_prefilters: bool,
    /// Directory holding manifest.json and generator files, replacing the built-in catalog.
    #[arg(long, global = true, value_name = "PATH")]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table of a group.
    Table {
        /// Catalog id, small group id such as G24_12, or path to a generator file.
        group: String,
    },
    /// Decide which irreducibles are QSI (or monomial).
    Qsi {
        group: String,
        /// Restrict to one character: a degree (`4`, `deg:4`) or a table index (`idx:3`, 1-based).
        #[arg(long = "char", value_name = "DEGREE-OR-INDEX")]
        character: Option<String>,
        /// Look for monomial witnesses (linear φ, k = 1) instead.
        #[arg(long)]
        monomial: bool,
    },
    /// Order of a finite simple group of Lie type: `order PSL 2 7`, `order E8 2`.
    Order {
        #[arg(num_args = 2..=3, value_names = ["FAMILY", "N", "Q"])]
        args: Vec<String>,
    },
    /// Primitive prime divisors of d^n - 1.
    Zsigmondy { d: u64, n: u32 },
    /// Prime-divisor elimination of overgroups of a Singer-type torus.
    Eliminate {
        #[arg(num_args = 2..=3, value_names = ["FAMILY", "N", "Q"])]
        args: Vec<String>,
    },
    /// Run a named reproduction and check every assertion in it.
    VerifyPaper {
        /// Case id, or `all`.
        case: Option<String>,
        /// List the case ids.
        #[arg(long)]
        list: bool,
    },
    /// List the catalog groups and subgroups.
    List,
    /// Print the JSON schema of the reports.
    Schema,
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    let catalog = match &cli.fixtures {
        Some(dir) => Catalog::from_dir(dir)?,
        None => Catalog::builtin(),
    };
    let options = SearchOptions {
        max_group_order: cli.max_group_order,
        prefilters: !cli.no_prefilters,
        ..SearchOptions::default()
    };
    match cli.command {
        Command::Table { group } => commands::table(&catalog, &group),
        Command::Qsi { group, character, monomial } => {
            commands::qsi(&catalog, &group, character.as_deref(), monomial, options)
        }
        Command::Order { args } => commands::order(&args),
        Command::Zsigmondy { d, n } => commands::zsigmondy(d, n),
        Command::Eliminate { args } => commands::eliminate(&args),
        Command::VerifyPaper { case, list } => {
            if list {
                return Ok(commands::list_cases());
            }
            let case = case.ok_or_else(|| UsageError("verify-paper needs a case id (see --list)".into()))?;
            cases::run(&catalog, &case, options)
        }
        Command::List => Ok(commands::list(&catalog)),
        Command::Schema => Ok(commands::schema()),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Capacity { .. }) => 3,
        Some(Error::NotFound(_) | Error::MalformedInput(_) | Error::Domain(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"));
            } else {
                print!("{}", report.text);
            }
            if let Some(bound) = &report.capacity {
                eprintln!("qsi: capacity exceeded: {bound}");
                return ExitCode::from(3);
            }
            if !report.ok {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("qsi: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
