use serde::Serialize;

use super::noise::{check_probability, flip_weight};
use crate::error::{Error, Result};
use crate::quantum::StateVector;

/// Largest code order accepted by the closed forms (`2(2k+1) ≤ 62`).
pub const MAX_CLOSED_FORM_K: usize = 15;

fn check_k(k: usize) -> Result<()> {
    if (1..=MAX_CLOSED_FORM_K).contains(&k) {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder { k, min: 1, max: MAX_CLOSED_FORM_K })
    }
}

/// Exact binomial coefficient; zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_i coeffs[i] p^i (1-p)^(n-i)` with `n = coeffs.len() - 1`.
pub fn weight_polynomial(coeffs: &[u64], p: f64) -> f64 {
    let n = coeffs.len() - 1;
    coeffs.iter().enumerate().map(|(i, &c)| c as f64 * flip_weight(p, n, i)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingleFidelity {
    /// Probability that at most `k` of the `2k+1` qubits flip.
    pub success_probability: f64,
    pub fidelity: f64,
}

/// Success probability and minimum fidelity of one encoded qubit.
pub fn closed_form_single_fidelity(k: usize, p: f64) -> Result<SingleFidelity> {
    check_k(k)?;
    check_probability(p)?;
    let n = 2 * k + 1;
    let coeffs: Vec<u64> = (0..=n).map(|r| if r <= k { binomial(n as u64, r as u64) } else { 0 }).collect();
    let success_probability = weight_polynomial(&coeffs, p);
    Ok(SingleFidelity { success_probability, fidelity: success_probability.sqrt() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BipartiteKind {
    Bell,
    Product,
}

/// How the flip-count coefficients are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientRule {
    /// Counts splits `(a, b)` of `i` flips where each block's decoder
    /// succeeds (`a, b ≤ k`), plus, for the Bell pair, splits where both
    /// fail (`a, b > k`). Matches exhaustive enumeration.
    PerSide,
    /// The published piecewise formula: the middle range sums every split
    /// with `1 ≤ j ≤ i-1`, which overcounts once `k ≥ 2`.
    Literal,
}

/// `f(0..=2(2k+1))` for the given rule.
pub fn bipartite_coefficients(k: usize, kind: BipartiteKind, rule: CoefficientRule) -> Result<Vec<u64>> {
    check_k(k)?;
    let n = 2 * k + 1;
    let c = |r: usize| binomial(n as u64, r as u64);
    let coeffs = match rule {
        CoefficientRule::PerSide => (0..=2 * n)
            .map(|i| {
                let split = |ok: &dyn Fn(usize) -> bool| -> u64 {
                    (0..=i.min(n)).filter(|&a| i - a <= n && ok(a) && ok(i - a)).map(|a| c(a) * c(i - a)).sum()
                };
                let both_ok = split(&|a| a <= k);
                match kind {
                    BipartiteKind::Bell => both_ok + split(&|a| a > k),
                    BipartiteKind::Product => both_ok,
                }
            })
            .collect(),
        CoefficientRule::Literal => {
            let mut f = vec![0u64; 2 * n + 1];
            for (i, slot) in f.iter_mut().enumerate().take(n) {
                *slot = if i <= k { binomial(2 * n as u64, i as u64) } else { (1..i).map(|j| c(j) * c(i - j)).sum() };
            }
            if kind == BipartiteKind::Bell {
                for i in n + 1..=2 * n {
                    f[i] = f[2 * n - i];
                }
            }
            f
        }
    };
    Ok(coeffs)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BipartiteFidelity {
    pub fidelity: f64,
    pub coefficients: Vec<u64>,
}

/// Fidelity of the encoded pair using per-side counting.
pub fn closed_form_bipartite_fidelity(k: usize, p: f64, kind: BipartiteKind) -> Result<BipartiteFidelity> {
    closed_form_bipartite_fidelity_with(k, p, kind, CoefficientRule::PerSide)
}

pub fn closed_form_bipartite_fidelity_with(
    k: usize,
    p: f64,
    kind: BipartiteKind,
    rule: CoefficientRule,
) -> Result<BipartiteFidelity> {
    check_probability(p)?;
    let coefficients = bipartite_coefficients(k, kind, rule)?;
    let fidelity = weight_polynomial(&coefficients, p).sqrt();
    Ok(BipartiteFidelity { fidelity, coefficients })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnencodedKind {
    Bell,
    Arbitrary,
}

/// Minimum fidelity of an unprotected pair under independent flips.
///
/// For arbitrary inputs the minimum is `1 - p`, reached at `|00⟩`: the
/// squared fidelity is `(1-p)² + p(1-p)(⟨XI⟩² + ⟨IX⟩²) + p²⟨XX⟩²`.
pub fn unencoded_min_fidelity(p: f64, kind: UnencodedKind) -> Result<f64> {
    check_probability(p)?;
    Ok(match kind {
        UnencodedKind::Bell => (p * p + (1.0 - p) * (1.0 - p)).sqrt(),
        UnencodedKind::Arbitrary => 1.0 - p,
    })
}

/// Minimum fidelity of one unprotected qubit, `√(1-p)`, reached at `|0⟩`.
pub fn unencoded_single_min_fidelity(p: f64) -> Result<f64> {
    check_probability(p)?;
    Ok((1.0 - p).sqrt())
}

/// The computed arbitrary-input minimum alongside the two printed readings
/// (`p` and `√p`) that it is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnencodedReadings {
    pub p: f64,
    pub bipartite_oracle: f64,
    pub single_oracle: f64,
    pub linear_reading: f64,
    pub sqrt_reading: f64,
}

pub fn unencoded_readings(p: f64) -> Result<UnencodedReadings> {
    Ok(UnencodedReadings {
        p,
        bipartite_oracle: unencoded_min_fidelity(p, UnencodedKind::Arbitrary)?,
        single_oracle: unencoded_single_min_fidelity(p)?,
        linear_reading: p,
        sqrt_reading: p.sqrt(),
    })
}

/// `θ_i = π i / (steps-1)`, `φ_j = 2π j / steps`.
fn bloch_grid(steps: usize) -> impl Iterator<Item = StateVector> + Clone {
    let steps = steps.max(2);
    (0..steps).flat_map(move |i| {
        let theta = std::f64::consts::PI * i as f64 / (steps - 1) as f64;
        (0..steps).map(move |j| StateVector::bloch(theta, std::f64::consts::TAU * j as f64 / steps as f64))
    })
}

/// Minimum of `f` over a `steps × steps` Bloch-angle grid, with the arg-min state.
pub fn min_over_bloch_grid<F>(steps: usize, f: F) -> Result<(f64, StateVector)>
where
    F: Fn(&StateVector) -> Result<f64>,
{
    let mut best: Option<(f64, StateVector)> = None;
    for s in bloch_grid(steps) {
        let v = f(&s)?;
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, s));
        }
    }
    Ok(best.expect("grid is nonempty"))
}

/// Minimum of `f` over product states `|a⟩ ⊗ |b⟩` with both factors on the grid.
pub fn min_over_product_grid<F>(steps: usize, f: F) -> Result<(f64, StateVector)>
where
    F: Fn(&StateVector) -> Result<f64>,
{
    let grid: Vec<StateVector> = bloch_grid(steps).collect();
    let mut best: Option<(f64, StateVector)> = None;
    for a in &grid {
        for b in &grid {
            let s = a.tensor(b)?;
            let v = f(&s)?;
            if best.as_ref().is_none_or(|(m, _)| v < *m) {
                best = Some((v, s));
            }
        }
    }
    Ok(best.expect("grid is nonempty"))
}
