//! Command-line front end.
//!
//! The root command audits a CSV dataset; the `bench` subcommand times the
//! fused engine against the naive enumerator on synthetic data.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags), 2 on data errors
//! (load or validation failures). Every failure prints one diagnostic line
//! to stderr.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use fairpriori::{
    fairpriori, load_csv, render, run_sweep, synth_generate, AuditConfig, EngineKind,
    FairnessMetric, OutputFormat, SynthSpec,
};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

#[derive(Parser)]
#[command(
    name = "fairpriori",
    version,
    about = "Report every sufficiently large attribute-value subgroup of a dataset \
             with its fairness-metric value and its deviation from the whole-dataset baseline",
    args_conflicts_with_subcommands = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    audit: AuditArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Time (min_support, max_length, engine) grid cells on a synthetic dataset
    Bench(BenchArgs),
}

#[derive(Args, Default)]
struct AuditArgs {
    /// CSV data file (UTF-8, header row required)
    #[arg(long)]
    data: Option<PathBuf>,

    /// Column of the data file, or a separate single-column CSV file, holding
    /// the predicted outcomes (an existing file path wins over a column name)
    #[arg(long)]
    predicted: Option<String>,

    /// Column of the data file, or a separate single-column CSV file, holding
    /// the actual outcomes
    #[arg(long)]
    actual: Option<String>,

    /// Comma-separated set of permitted outcome values
    #[arg(long)]
    categories: Option<String>,

    /// Outcome value treated as positive
    #[arg(long)]
    positive: Option<String>,

    /// Keep subgroups whose support is at least this fraction
    #[arg(long, default_value_t = 0.5)]
    min_support: f64,

    /// Largest number of attribute=value pairs per subgroup
    #[arg(long, default_value_t = 2)]
    max_length: usize,

    /// demographic_parity, predictive_parity, predictive_equality, or
    /// equalized_opportunities
    #[arg(long, default_value = "demographic_parity")]
    metric: String,

    /// Attribute to exclude from subgroup generation (repeatable)
    #[arg(long)]
    ignore: Vec<String>,

    /// Output format: table, csv, or json
    #[arg(long, default_value = "table")]
    output: String,

    /// Write the report to this file instead of stdout
    #[arg(long)]
    out_file: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// JSON file describing the synthetic dataset
    #[arg(long)]
    spec: PathBuf,

    /// Support thresholds to sweep
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])]
    supports: Vec<f64>,

    /// Maximum subgroup lengths to sweep
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
    lengths: Vec<usize>,

    /// Engines to time: fused and/or naive
    #[arg(long, value_delimiter = ',', default_values_t = [String::from("fused")])]
    engines: Vec<String>,

    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    output: String,
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn data_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_DATA)
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, String> {
    value.ok_or_else(|| format!("missing required flag --{flag}"))
}

fn run_audit(args: AuditArgs) -> ExitCode {
    // Flag-level validation first: anything that fails here is a usage error.
    let parsed = (|| -> Result<_, String> {
        let data = require(args.data, "data")?;
        let predicted = require(args.predicted, "predicted")?;
        let actual = require(args.actual, "actual")?;
        let categories_raw = require(args.categories, "categories")?;
        let positive = require(args.positive, "positive")?;

        let metric: FairnessMetric = args.metric.parse().map_err(|e| format!("{e}"))?;
        let format: OutputFormat = args.output.parse().map_err(|e| format!("{e}"))?;
        if !(args.min_support > 0.0 && args.min_support <= 1.0) {
            return Err(format!(
                "min_support must be in (0, 1], got {}",
                args.min_support
            ));
        }
        if args.max_length < 1 {
            return Err("max_length must be at least 1".to_string());
        }
        let categories: Vec<String> = categories_raw.split(',').map(str::to_string).collect();
        for (i, c) in categories.iter().enumerate() {
            if c.is_empty() {
                return Err("categories must not contain empty values".to_string());
            }
            if categories[..i].contains(c) {
                return Err(format!("duplicate outcome category '{c}'"));
            }
        }
        if !categories.contains(&positive) {
            return Err(format!(
                "positive label '{positive}' is not among the categories"
            ));
        }
        Ok((data, predicted, actual, categories, positive, metric, format))
    })();
    let (data, predicted, actual, categories, positive, metric, format) = match parsed {
        Ok(p) => p,
        Err(message) => return usage_error(message),
    };

    let dataset = match load_csv(&data, &predicted, &actual, &categories, &positive) {
        Ok(ds) => ds,
        Err(e) => return data_error(e),
    };
    let config = AuditConfig {
        min_support: args.min_support,
        max_length: args.max_length,
        metric,
        ignored_attributes: args.ignore.into_iter().collect(),
    };
    let report = match fairpriori(&dataset, &config) {
        Ok(r) => r,
        Err(e) => return data_error(e),
    };
    let text = render(&report, format);
    match args.out_file {
        Some(path) => {
            if let Err(e) = fs::write(&path, text) {
                return data_error(format_args!("cannot write '{}': {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

fn run_bench(args: BenchArgs) -> ExitCode {
    let engines = match args
        .engines
        .iter()
        .map(|token| token.parse::<EngineKind>())
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(engines) => engines,
        Err(e) => return usage_error(e),
    };
    if engines.is_empty() {
        return usage_error("at least one engine is required");
    }
    if args.output != "csv" && args.output != "json" {
        return usage_error(format_args!(
            "unknown output format '{}' (bench emits csv or json)",
            args.output
        ));
    }

    let text = match fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => {
            return data_error(format_args!("cannot read '{}': {e}", args.spec.display()))
        }
    };
    let spec: SynthSpec = match serde_json::from_str(&text) {
        Ok(s) => s,
        Err(e) => {
            return data_error(format_args!(
                "cannot parse '{}': {e}",
                args.spec.display()
            ))
        }
    };
    let dataset = match synth_generate(&spec) {
        Ok(ds) => ds,
        Err(e) => return data_error(e),
    };
    let result = match run_sweep(&dataset, &args.supports, &args.lengths, &engines) {
        Ok(r) => r,
        Err(e) => return data_error(e),
    };
    if args.output == "csv" {
        print!("{}", result.to_csv());
    } else {
        print!("{}", result.to_json());
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            // Keep diagnostics to one line; clap appends usage hints.
            let message = e.to_string();
            let line = message.lines().next().unwrap_or("invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match cli.command {
        Some(Command::Bench(args)) => run_bench(args),
        None => run_audit(cli.audit),
    }
}
