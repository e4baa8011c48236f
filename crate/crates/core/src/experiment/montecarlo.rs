use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{ExperimentConfig, Method};
use super::exact::overlap_table;
use super::model::PatternModel;
use super::row::ResultRow;
use crate::error::{Error, Result};
use crate::exec::ExecPolicy;

/// Samples per independently seeded chunk.
pub const MC_CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    /// Sample mean of the squared overlap.
    pub mean_squared: f64,
    pub fidelity: f64,
    /// Delta-method standard error of `fidelity`.
    pub stderr: f64,
    pub samples: u64,
}

/// The ChaCha stream for chunk `chunk` at flip probability `p`. Depends only
/// on `p` and the chunk, so a row does not change when other scenarios or
/// grid points are added to the run.
pub fn stream_id(p: f64, chunk: u64) -> u64 {
    let p_key = (p * 1e12).round() as u64;
    (p_key << 20) | chunk
}

/// Count, mean and sum of squared deviations (Welford), mergeable in a fixed order.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let d = x - self.mean;
        self.mean += d / self.count;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: &Moments) -> Moments {
        if other.count == 0.0 {
            return self;
        }
        if self.count == 0.0 {
            return *other;
        }
        let count = self.count + other.count;
        let d = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + d * other.count / count,
            m2: self.m2 + other.m2 + d * d * self.count * other.count / count,
        }
    }
}

pub fn sample_pattern<R: Rng>(rng: &mut R, num_qubits: usize, p: f64) -> u64 {
    (0..num_qubits).fold(0u64, |m, q| if rng.random::<f64>() < p { m | 1 << q } else { m })
}

/// Monte Carlo estimate of the fidelity. When the pattern space is no
/// larger than the sample count, overlaps come from a precomputed table.
pub fn estimate(model: &PatternModel, p: f64, samples: u64, seed: u64, policy: ExecPolicy) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::Config("Monte Carlo needs at least one sample".into()));
    }
    let n = model.num_qubits();
    let table = if (1u64 << n) <= samples { Some(overlap_table(model, policy)?) } else { None };
    let chunks = samples.div_ceil(MC_CHUNK);
    let partial = policy.try_map_indexed(chunks as usize, |c| -> Result<Moments> {
        let c = c as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id(p, c));
        let len = MC_CHUNK.min(samples - c * MC_CHUNK);
        let mut acc = Moments::default();
        for _ in 0..len {
            let mask = sample_pattern(&mut rng, n, p);
            acc.push(match &table {
                Some(t) => t[mask as usize],
                None => model.overlap(mask)?,
            });
        }
        Ok(acc)
    })?;
    let total = partial.iter().fold(Moments::default(), |a, b| a.merge(b));
    let s = samples as f64;
    let mean = total.mean.clamp(0.0, 1.0);
    let var = if samples > 1 { total.m2 / (s - 1.0) } else { 0.0 };
    let se_mean = (var / s).sqrt();
    let fidelity = mean.sqrt();
    let stderr = if fidelity > 0.0 { se_mean / (2.0 * fidelity) } else { se_mean.sqrt() };
    Ok(McEstimate { mean_squared: mean, fidelity, stderr, samples })
}

pub fn monte_carlo(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    config.validate()?;
    if config.samples == 0 {
        return Err(Error::Config("Monte Carlo needs at least one sample".into()));
    }
    let mut rows = Vec::new();
    for (scenario, k) in config.points() {
        let model = PatternModel::new(scenario, k.max(1), config.channel)?;
        for &p in &config.ps {
            let t = Instant::now();
            let est = estimate(&model, p, config.samples, config.seed, config.policy)?;
            rows.push(ResultRow {
                scenario,
                k,
                channel: config.channel,
                p,
                method: Method::MonteCarlo,
                fidelity: est.fidelity,
                stderr: est.stderr,
                samples: config.samples,
                seed: config.seed,
                wall_time: if config.record_wall_time { t.elapsed().as_secs_f64() } else { 0.0 },
            });
        }
    }
    Ok(rows)
}
