//! `bellqec`: fidelity experiments for repetition-code encoded Bell pairs,
//! plus syndrome table export and the verification battery.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use bellqec::experiment::{
    collect_traces, parse_list, parse_p_range, run_experiment, verify, write_gnuplot, write_rows, ExperimentConfig,
    Method, OutputFormat, Scenario, VerifyOptions, CHECK_IDS,
};
use bellqec::longdistance::write_transcript_jsonl;
use bellqec::repetition::ChannelKind;
use bellqec::stabilizer::build_syndrome_table;
use bellqec::ExecPolicy;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INVALID_CONFIG: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "bellqec", version, about = "Repetition-code encoded Bell pairs under bit- and phase-flip noise")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the acceptance battery; exit 0 iff every selected check passes.
    Verify(VerifyArgs),
    /// Export the exhaustive Bell-code syndrome table as CSV.
    Table(TableArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Comma-separated scenarios: unencoded, qrc-single, qrc-bipartite-bell,
    /// qrc-bipartite-product, stabilizer-short, longdistance-cc, longdistance-nocc.
    #[arg(long, default_value = "qrc-bipartite-bell")]
    scenario: String,

    /// Comma-separated code orders.
    #[arg(long, default_value = "1")]
    k: String,

    #[arg(long, default_value = "bitflip")]
    channel: String,

    /// Comma-separated flip probabilities.
    #[arg(long, conflicts_with = "p_range")]
    p: Option<String>,

    /// Inclusive grid START:STOP:STEP.
    #[arg(long)]
    p_range: Option<String>,

    /// exact or mc.
    #[arg(long, default_value = "exact")]
    method: String,

    #[arg(long, default_value_t = 100_000)]
    samples: u64,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,

    /// Write long-distance protocol transcripts as JSON lines.
    #[arg(long)]
    trace: Option<PathBuf>,

    /// Companion gnuplot data file.
    #[arg(long, alias = "dat")]
    gnuplot: Option<PathBuf>,

    /// Write wall_time as 0 so output is byte-identical across runs.
    #[arg(long)]
    no_wall_time: bool,

    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated subset of checks.
    #[arg(long)]
    only: Option<String>,

    /// Golden syndrome CSV to compare against instead of the built-in one.
    #[arg(long)]
    golden: Option<PathBuf>,

    #[arg(long, default_value_t = 100_000)]
    samples: u64,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Print the report as JSON.
    #[arg(long)]
    json: bool,

    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, default_value_t = 1)]
    k: usize,

    #[arg(long)]
    out: Option<PathBuf>,
}

/// Marks errors that should exit with the invalid-configuration code.
#[derive(Debug)]
struct ConfigError(String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config_err(e: impl std::fmt::Display) -> anyhow::Error {
    ConfigError(e.to_string()).into()
}

fn is_config_error(e: &bellqec::Error) -> bool {
    use bellqec::Error as E;
    matches!(e, E::Config(_) | E::InvalidProbability(_) | E::TooManyQubits { .. } | E::UnsupportedOrder { .. })
}

fn policy(sequential: bool) -> ExecPolicy {
    if sequential {
        ExecPolicy::Sequential
    } else {
        ExecPolicy::Parallel
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn build_config(args: &RunArgs) -> Result<(ExperimentConfig, OutputFormat)> {
    let ps = match (&args.p, &args.p_range) {
        (_, Some(range)) => parse_p_range(range).map_err(config_err)?,
        (Some(list), None) => parse_list::<f64>(list).map_err(config_err)?,
        (None, None) => vec![0.1],
    };
    let config = ExperimentConfig {
        scenarios: parse_list::<Scenario>(&args.scenario).map_err(config_err)?,
        ks: parse_list::<usize>(&args.k).map_err(config_err)?,
        channel: args.channel.parse::<ChannelKind>().map_err(config_err)?,
        ps,
        method: args.method.parse::<Method>().map_err(config_err)?,
        samples: args.samples,
        seed: args.seed,
        record_wall_time: !args.no_wall_time,
        policy: policy(args.sequential),
    };
    config.validate().map_err(config_err)?;
    let format = args.format.parse::<OutputFormat>().map_err(config_err)?;
    Ok((config, format))
}

fn run(args: &RunArgs) -> Result<u8> {
    let (config, format) = build_config(args)?;
    let rows = run_experiment(&config)?;
    let mut out = open_out(args.out.as_deref())?;
    write_rows(&rows, format, &mut out)?;
    out.flush()?;
    if let Some(path) = &args.gnuplot {
        let mut w = open_out(Some(path))?;
        write_gnuplot(&rows, &mut w)?;
        w.flush()?;
    }
    if let Some(path) = &args.trace {
        let messages = collect_traces(&config)?;
        if messages.is_empty() {
            eprintln!("note: no long-distance scenario selected; {} is empty", path.display());
        }
        let mut w = open_out(Some(path))?;
        write_transcript_jsonl(&messages, &mut w)?;
        w.flush()?;
    }
    Ok(0)
}

fn run_verify(args: &VerifyArgs) -> Result<u8> {
    let only = match &args.only {
        Some(list) => {
            let ids: Vec<String> = parse_list::<String>(list).map_err(config_err)?;
            if let Some(bad) = ids.iter().find(|id| !CHECK_IDS.contains(&id.as_str())) {
                return Err(config_err(format!("unknown check `{bad}` (expected one of {})", CHECK_IDS.join(", "))));
            }
            Some(ids)
        }
        None => None,
    };
    let golden_csv = match &args.golden {
        Some(path) => {
            Some(std::fs::read_to_string(path).with_context(|| format!("cannot read golden file {}", path.display()))?)
        }
        None => None,
    };
    let opts =
        VerifyOptions { only, golden_csv, mc_samples: args.samples, seed: args.seed, policy: policy(args.sequential) };
    let report = verify(&opts)?;
    let mut out = io::stdout().lock();
    if args.json {
        writeln!(out, "{}", report.to_json()?)?;
    } else {
        for c in &report.checks {
            writeln!(out, "{c}")?;
            for d in &c.details {
                writeln!(out, "    {d}")?;
            }
        }
        let passed = report.checks.iter().filter(|c| c.passed).count();
        writeln!(out, "verify: {passed}/{} checks passed", report.checks.len())?;
    }
    Ok(if report.passed() { 0 } else { EXIT_VERIFY_FAILED })
}

fn run_table(args: &TableArgs) -> Result<u8> {
    let table = build_syndrome_table(args.k).map_err(|e| if is_config_error(&e) { config_err(e) } else { e.into() })?;
    let mut out = open_out(args.out.as_deref())?;
    table.write_csv(&mut out)?;
    out.flush()?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Some(Command::Verify(args)) => run_verify(args),
        Some(Command::Table(args)) => run_table(args),
        None => run(&cli.run),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let config = e.downcast_ref::<ConfigError>().is_some()
                || e.downcast_ref::<bellqec::Error>().is_some_and(is_config_error);
            ExitCode::from(if config { EXIT_INVALID_CONFIG } else { EXIT_VERIFY_FAILED })
        }
    }
}
