use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::config::{ExperimentConfig, Method, Scenario};
use super::exact::enumerate_exact;
use super::model::PatternModel;
use super::montecarlo::monte_carlo;
use super::row::{write_gnuplot, write_rows, OutputFormat, ResultRow};
use crate::error::{Error, Result};
use crate::longdistance::ClassicalMessage;

pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    match config.method {
        Method::Exact => enumerate_exact(config),
        Method::MonteCarlo => monte_carlo(config),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn finish(mut w: BufWriter<File>, path: &Path) -> Result<()> {
    w.flush().map_err(|source| Error::Io { path: path.display().to_string(), source })
}

/// Runs the configuration and writes the rows to `out`, plus an optional
/// gnuplot data file.
pub fn sweep(
    config: &ExperimentConfig,
    out: &Path,
    format: OutputFormat,
    gnuplot: Option<&Path>,
) -> Result<Vec<ResultRow>> {
    let rows = run_experiment(config)?;
    let mut w = create(out)?;
    write_rows(&rows, format, &mut w)?;
    finish(w, out)?;
    if let Some(path) = gnuplot {
        let mut w = create(path)?;
        write_gnuplot(&rows, &mut w)?;
        finish(w, path)?;
    }
    Ok(rows)
}

/// Transcripts of every flip pattern for the long-distance scenarios in
/// `config`, with `round` counting runs across the whole trace.
pub fn collect_traces(config: &ExperimentConfig) -> Result<Vec<ClassicalMessage>> {
    let mut out = Vec::new();
    let mut round = 0;
    for (scenario, k) in config.points() {
        if !matches!(scenario, Scenario::LongdistanceCc | Scenario::LongdistanceNocc) {
            continue;
        }
        let model = PatternModel::new(scenario, k, config.channel)?;
        let (protocol, classical) = model.protocol().expect("long-distance model");
        for mask in 0..1u64 << model.num_qubits() {
            out.extend(protocol.run_pattern(config.channel, mask, classical, round)?.transcript);
            round += 1;
        }
    }
    Ok(out)
}
