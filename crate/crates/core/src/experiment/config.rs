use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::ExecPolicy;
use crate::repetition::ChannelKind;

/// Qubit cap for exhaustive enumeration.
pub const MAX_EXACT_QUBITS: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Unencoded,
    QrcSingle,
    QrcBipartiteBell,
    QrcBipartiteProduct,
    StabilizerShort,
    LongdistanceCc,
    LongdistanceNocc,
}

impl Scenario {
    pub const ALL: [Scenario; 7] = [
        Scenario::Unencoded,
        Scenario::QrcSingle,
        Scenario::QrcBipartiteBell,
        Scenario::QrcBipartiteProduct,
        Scenario::StabilizerShort,
        Scenario::LongdistanceCc,
        Scenario::LongdistanceNocc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Unencoded => "unencoded",
            Scenario::QrcSingle => "qrc-single",
            Scenario::QrcBipartiteBell => "qrc-bipartite-bell",
            Scenario::QrcBipartiteProduct => "qrc-bipartite-product",
            Scenario::StabilizerShort => "stabilizer-short",
            Scenario::LongdistanceCc => "longdistance-cc",
            Scenario::LongdistanceNocc => "longdistance-nocc",
        }
    }

    /// Whether the code order matters. The unencoded pair is reported with `k = 0`.
    pub fn uses_k(self) -> bool {
        self != Scenario::Unencoded
    }

    /// Qubits exposed to the channel.
    pub fn channel_qubits(self, k: usize) -> usize {
        match self {
            Scenario::Unencoded => 2,
            Scenario::QrcSingle => 2 * k + 1,
            _ => 2 * (2 * k + 1),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL.into_iter().find(|sc| sc.name() == s.trim()).ok_or_else(|| {
            let names: Vec<&str> = Scenario::ALL.iter().map(|s| s.name()).collect();
            Error::Config(format!("unknown scenario `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "mc")]
    MonteCarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::MonteCarlo => "mc",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "mc" | "montecarlo" | "monte-carlo" => Ok(Method::MonteCarlo),
            _ => Err(Error::Config(format!("unknown method `{s}` (expected exact or mc)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenarios: Vec<Scenario>,
    pub ks: Vec<usize>,
    pub channel: ChannelKind,
    pub ps: Vec<f64>,
    pub method: Method,
    pub samples: u64,
    pub seed: u64,
    /// When false, `wall_time` is written as 0 so output files are byte-stable.
    pub record_wall_time: bool,
    pub policy: ExecPolicy,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            scenarios: vec![Scenario::QrcBipartiteBell],
            ks: vec![1],
            channel: ChannelKind::BitFlip,
            ps: vec![0.1],
            method: Method::Exact,
            samples: 100_000,
            seed: 0,
            record_wall_time: true,
            policy: ExecPolicy::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.scenarios.is_empty() {
            return Err(Error::Config("no scenario selected".into()));
        }
        if self.ks.is_empty() {
            return Err(Error::Config("no code order selected".into()));
        }
        if let Some(p) = self.ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidProbability(*p));
        }
        if self.method == Method::MonteCarlo && self.samples == 0 {
            return Err(Error::Config("Monte Carlo needs at least one sample".into()));
        }
        for &sc in &self.scenarios {
            for &k in &self.ks {
                if sc.uses_k() && k == 0 {
                    return Err(Error::UnsupportedOrder { k, min: 1, max: 3 });
                }
                let q = sc.channel_qubits(k);
                if self.method == Method::Exact && q > MAX_EXACT_QUBITS {
                    return Err(Error::TooManyQubits { num_qubits: q, cap: MAX_EXACT_QUBITS });
                }
            }
        }
        Ok(())
    }

    /// `(scenario, k)` pairs in run order; the unencoded scenario appears once with `k = 0`.
    pub fn points(&self) -> Vec<(Scenario, usize)> {
        let mut out = Vec::new();
        for &sc in &self.scenarios {
            if sc.uses_k() {
                out.extend(self.ks.iter().map(|&k| (sc, k)));
            } else if !out.contains(&(sc, 0)) {
                out.push((sc, 0));
            }
        }
        out
    }
}

/// Rounds to 12 decimals so grid values print cleanly.
pub fn round_p(p: f64) -> f64 {
    (p * 1e12).round() / 1e12
}

/// Parses `START:STOP:STEP` into an inclusive grid; `STOP < START` gives an empty grid.
pub fn parse_p_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("p-range `{spec}` must be START:STOP:STEP")));
    }
    let num = |s: &str| -> Result<f64> {
        s.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad number `{s}` in p-range")))
    };
    let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::Config(format!("p-range step must be positive, got {step}")));
    }
    if stop < start {
        return Ok(Vec::new());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    let grid: Vec<f64> = (0..count).map(|i| round_p(start + i as f64 * step)).collect();
    if let Some(p) = grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidProbability(*p));
    }
    Ok(grid)
}

/// Comma-separated list parser for flags such as `--k 1,2`.
pub fn parse_list<T>(s: &str) -> Result<Vec<T>>
where
    T: FromStr,
    T::Err: fmt::Display,
{
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim().parse::<T>().map_err(|e| {
                let msg = e.to_string();
                let reason = msg.strip_prefix("invalid configuration: ").unwrap_or(&msg);
                Error::Config(format!("bad list entry `{t}`: {reason}"))
            })
        })
        .collect()
}
