use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tyconlab::checker::{run_suite, theorem_report, CheckConfig, LawGroup, THEOREM_LAWS};
use tyconlab::law::{LawReport, Status};
use tyconlab::registry::{self, BASE_TYPES, DEFAULT_INSTANCES};

#[derive(Parser)]
#[command(
    name = "tyconlab",
    version,
    about = "Bounded-exhaustive checker for functor, monad and transformer laws"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run law groups on instances.
    Check {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        out: Output,
    },
    /// Search for the minimal counterexample to a transformer unit law.
    Counterexample {
        /// One of errort-right-unit, writert-right-unit, writert-left-unit.
        law: String,
        /// Inner monad of the transformer.
        #[arg(long, default_value = "list")]
        inner: String,
        #[arg(long, env = "TYCONLAB_DEPTH", default_value_t = 3)]
        depth: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check the invariant closure for transformer instances.
    Invariant {
        #[arg(long = "instance", value_delimiter = ',', default_values = ["errort:unit:list", "writert:m3:list"])]
        instances: Vec<String>,
        #[arg(long, env = "TYCONLAB_DEPTH")]
        depth: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// List registered types, monoids, instances and law groups.
    Registry {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every law group on every default instance.
    All {
        #[arg(long, env = "TYCONLAB_DEPTH")]
        depth: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Select {
    /// Instance names, comma separated or repeated.
    #[arg(long = "instance", value_delimiter = ',')]
    instances: Vec<String>,
    /// Law groups, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    laws: Vec<String>,
    #[arg(long, env = "TYCONLAB_DEPTH")]
    depth: Option<usize>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Count failures predicted by the theory (lazy inner return) as passes
    /// when the predicted witness is found.
    #[arg(long)]
    expect_paper: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<tyconlab::Error> for CliError {
    fn from(e: tyconlab::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every verdict was the accepted one.
fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Check { select, out } => {
            let mut cfg = CheckConfig {
                depth: select.depth,
                ..CheckConfig::default()
            };
            if !select.instances.is_empty() {
                cfg.instances = select.instances;
            }
            if !select.laws.is_empty() {
                cfg.laws = select
                    .laws
                    .iter()
                    .map(|l| l.parse::<LawGroup>())
                    .collect::<Result<_, _>>()?;
            }
            emit(&run_suite(&cfg)?, &out)
        }
        Command::Counterexample {
            law,
            inner,
            depth,
            out,
        } => {
            if !THEOREM_LAWS.contains(&law.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown law {law}; expected one of {}",
                    THEOREM_LAWS.join(", ")
                )));
            }
            emit(&[theorem_report(&law, &inner, depth)?], &out)
        }
        Command::Invariant {
            instances,
            depth,
            out,
        } => {
            for name in &instances {
                if registry::instance(name)?.transformer.is_none() {
                    return Err(CliError::Usage(format!(
                        "{name} is not a transformer instance"
                    )));
                }
            }
            let cfg = CheckConfig {
                instances,
                laws: vec![LawGroup::Invariant],
                depth,
                ..CheckConfig::default()
            };
            emit(&run_suite(&cfg)?, &out)
        }
        Command::Registry { format } => {
            print_registry(format)?;
            Ok(true)
        }
        Command::All { depth, out } => {
            let cfg = CheckConfig {
                depth,
                ..CheckConfig::default()
            };
            emit(&run_suite(&cfg)?, &out)
        }
    }
}

fn accepted(r: &LawReport, expect_paper: bool) -> bool {
    if expect_paper {
        r.meets_expectation()
    } else {
        r.status == Status::Pass
    }
}

fn emit(reports: &[LawReport], out: &Output) -> Result<bool, CliError> {
    let body = match out.format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(reports).map_err(|e| CliError::Io(e.into()))?;
            s.push('\n');
            s
        }
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
    };
    match &out.output {
        Some(path) => fs::write(path, body)?,
        None => io::stdout().write_all(body.as_bytes())?,
    }
    let bad = reports
        .iter()
        .filter(|r| !accepted(r, out.expect_paper))
        .count();
    eprintln!("{} reports, {} unexpected", reports.len(), bad);
    Ok(bad == 0)
}

fn print_registry(format: Format) -> Result<(), CliError> {
    let groups: Vec<&str> = LawGroup::ALL.iter().map(|g| g.name()).collect();
    let types: Vec<String> = BASE_TYPES
        .iter()
        .chain(&["univ"])
        .map(|n| {
            format!(
                "{n} = {}",
                registry::rep_type(n).expect("registered").expr()
            )
        })
        .collect();
    match format {
        Format::Json => {
            let v = serde_json::json!({
                "types": types,
                "monoids": ["m3"],
                "instances": DEFAULT_INSTANCES,
                "law_groups": groups,
                "theorem_laws": THEOREM_LAWS,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&v).map_err(|e| CliError::Io(e.into()))?
            );
        }
        Format::Text => {
            println!("types:");
            for t in &types {
                println!("  {t}");
            }
            println!("monoids:\n  m3 (addition mod 3)");
            println!("instances:");
            for i in DEFAULT_INSTANCES {
                println!("  {i}");
            }
            println!("law groups: {}", groups.join(", "));
            println!("counterexample laws: {}", THEOREM_LAWS.join(", "));
        }
    }
    Ok(())
}
