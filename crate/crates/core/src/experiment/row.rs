use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::{Method, Scenario};
use crate::error::{Error, Result};
use crate::repetition::ChannelKind;

pub const CSV_HEADER: [&str; 10] =
    ["scenario", "k", "channel", "p", "method", "fidelity", "stderr", "samples", "seed", "wall_time"];

/// One output row. For exact rows `stderr` is 0 and `samples` is the number
/// of enumerated patterns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub scenario: Scenario,
    pub k: usize,
    pub channel: ChannelKind,
    pub p: f64,
    pub method: Method,
    pub fidelity: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub wall_time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!("unknown format `{s}` (expected csv or json)"))),
        }
    }
}

fn io_err(path: &str) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_string(), source }
}

/// CSV always starts with the header, even with no rows. JSON is an array of row objects.
pub fn write_rows<W: Write>(rows: &[ResultRow], format: OutputFormat, mut out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in rows {
                w.serialize(r)?;
            }
            w.flush().map_err(io_err("<output>"))?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            out.write_all(b"\n").map_err(io_err("<output>"))?;
        }
    }
    Ok(())
}

/// Whitespace-separated blocks, one per `(scenario, k)`, separated by two
/// blank lines so each block is a gnuplot `index`.
pub fn write_gnuplot<W: Write>(rows: &[ResultRow], mut out: W) -> Result<()> {
    let mut keys: Vec<(Scenario, usize)> = Vec::new();
    for r in rows {
        if !keys.contains(&(r.scenario, r.k)) {
            keys.push((r.scenario, r.k));
        }
    }
    let e = io_err("<gnuplot>");
    for (i, (scenario, k)) in keys.iter().enumerate() {
        if i > 0 {
            out.write_all(b"\n\n").map_err(&e)?;
        }
        writeln!(out, "# scenario={scenario} k={k}").map_err(&e)?;
        writeln!(out, "# p fidelity stderr").map_err(&e)?;
        for r in rows.iter().filter(|r| r.scenario == *scenario && r.k == *k) {
            writeln!(out, "{} {} {}", r.p, r.fidelity, r.stderr).map_err(&e)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(p: f64) -> ResultRow {
        ResultRow {
            scenario: Scenario::QrcBipartiteBell,
            k: 1,
            channel: ChannelKind::BitFlip,
            p,
            method: Method::Exact,
            fidelity: 0.5,
            stderr: 0.0,
            samples: 64,
            seed: 7,
            wall_time: 0.0,
        }
    }

    #[test]
    fn csv_header_and_rows() {
        let mut buf = Vec::new();
        write_rows(&[], OutputFormat::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "scenario,k,channel,p,method,fidelity,stderr,samples,seed,wall_time\n"
        );
        let mut buf = Vec::new();
        write_rows(&[row(0.1)], OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().nth(1), Some("qrc-bipartite-bell,1,bitflip,0.1,exact,0.5,0.0,64,7,0.0"));
    }

    #[test]
    fn json_round_trip() {
        let mut buf = Vec::new();
        write_rows(&[row(0.1), row(0.2)], OutputFormat::Json, &mut buf).unwrap();
        let back: Vec<ResultRow> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, vec![row(0.1), row(0.2)]);
    }

    #[test]
    fn gnuplot_blocks() {
        let mut other = row(0.1);
        other.k = 2;
        let mut buf = Vec::new();
        write_gnuplot(&[row(0.1), other, row(0.2)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# scenario=qrc-bipartite-bell k=1\n# p fidelity stderr\n0.1 0.5 0\n0.2 0.5 0\n\n\n"));
    }
}
