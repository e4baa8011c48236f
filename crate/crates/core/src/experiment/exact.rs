use std::time::Instant;

use super::config::{ExperimentConfig, Method};
use super::model::PatternModel;
use super::row::ResultRow;
use crate::error::Result;
use crate::exec::ExecPolicy;
use crate::repetition::flip_weight;

/// Squared overlaps summed by flip count: `sums[w] = Σ_{|m| = w} overlap(m)`.
/// For the Bell-pair scenarios these are the fidelity polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightProfile {
    pub num_qubits: usize,
    pub sums: Vec<f64>,
}

impl WeightProfile {
    pub fn fidelity_squared(&self, p: f64) -> f64 {
        self.sums.iter().enumerate().map(|(w, s)| s * flip_weight(p, self.num_qubits, w)).sum::<f64>().clamp(0.0, 1.0)
    }

    pub fn fidelity(&self, p: f64) -> f64 {
        self.fidelity_squared(p).sqrt()
    }

    /// The sums as integers, if every one is within `1e-9` of an integer.
    pub fn as_integers(&self) -> Option<Vec<u64>> {
        self.sums
            .iter()
            .map(|&s| {
                let r = s.round();
                ((s - r).abs() < 1e-9 && r >= 0.0).then_some(r as u64)
            })
            .collect()
    }
}

/// Per-pattern squared overlaps in pattern order.
pub fn overlap_table(model: &PatternModel, policy: ExecPolicy) -> Result<Vec<f64>> {
    policy.try_map_indexed(1usize << model.num_qubits(), |m| model.overlap(m as u64))
}

/// Parallel per-pattern evaluation, then a sequential sum in pattern order.
pub fn weight_profile(model: &PatternModel, policy: ExecPolicy) -> Result<WeightProfile> {
    let n = model.num_qubits();
    let table = overlap_table(model, policy)?;
    let mut sums = vec![0.0; n + 1];
    for (m, v) in table.iter().enumerate() {
        sums[m.count_ones() as usize] += v;
    }
    Ok(WeightProfile { num_qubits: n, sums })
}

/// One row per `(scenario, k, p)`; each `(scenario, k)` is enumerated once
/// and evaluated at every `p`.
pub fn enumerate_exact(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    config.validate()?;
    let mut rows = Vec::new();
    for (scenario, k) in config.points() {
        let start = Instant::now();
        let model = PatternModel::new(scenario, k.max(1), config.channel)?;
        let profile = weight_profile(&model, config.policy)?;
        let build = start.elapsed().as_secs_f64();
        for &p in &config.ps {
            let t = Instant::now();
            let fidelity = profile.fidelity(p);
            let wall_time = if config.record_wall_time { build + t.elapsed().as_secs_f64() } else { 0.0 };
            rows.push(ResultRow {
                scenario,
                k,
                channel: config.channel,
                p,
                method: Method::Exact,
                fidelity,
                stderr: 0.0,
                samples: 1 << model.num_qubits(),
                seed: config.seed,
                wall_time,
            });
        }
    }
    Ok(rows)
}
