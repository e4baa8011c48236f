use super::state::{DensityMatrix, StateVector};
use crate::error::{Error, Result};

/// `√⟨ψ|ρ|ψ⟩`, clamped to `[0, 1]`.
pub fn fidelity(reference: &StateVector, rho: &DensityMatrix) -> Result<f64> {
    Ok(rho.expectation(reference)?.clamp(0.0, 1.0).sqrt())
}

/// `-p log2 p - (1-p) log2 (1-p)`.
pub fn binary_entropy(p: f64) -> f64 {
    [p, 1.0 - p].iter().filter(|&&x| x > 0.0).map(|x| -x * x.log2()).sum()
}

/// `-Σ λ log2 λ` in bits; eigenvalues in `[-1e-10, 0]` count as zero.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .into_iter()
        .map(|l| if (-1e-10..=0.0).contains(&l) { 0.0 } else { l })
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub s_a: f64,
    pub s_b: f64,
    pub s_ab: f64,
    /// `S_AB - S_B`.
    pub s_a_given_b: f64,
    /// `S_A + S_B - S_AB`.
    pub mutual_information: f64,
}

/// Entropies of a bipartition; `a` and `b` must cover every qubit exactly once.
pub fn mutual_information(rho: &DensityMatrix, a: &[usize], b: &[usize]) -> Result<EntropyReport> {
    let n = rho.num_qubits();
    let mut seen = vec![false; n];
    for &q in a.iter().chain(b) {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, num_qubits: n });
        }
        if seen[q] {
            return Err(Error::InvalidPartition(format!("qubit {q} is in both parts")));
        }
        seen[q] = true;
    }
    if seen.iter().any(|s| !s) || a.is_empty() || b.is_empty() {
        return Err(Error::InvalidPartition("parts must be nonempty and cover all qubits".into()));
    }
    let s_a = von_neumann_entropy(&rho.partial_trace(a)?);
    let s_b = von_neumann_entropy(&rho.partial_trace(b)?);
    let s_ab = von_neumann_entropy(rho);
    Ok(EntropyReport { s_a, s_b, s_ab, s_a_given_b: s_ab - s_b, mutual_information: s_a + s_b - s_ab })
}
