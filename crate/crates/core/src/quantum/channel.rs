use num_complex::Complex64 as C64;

use super::kernel;
use super::state::{check_indices, DensityMatrix};
use crate::error::{Error, Result};
use crate::pauli::PauliString;

const COMPLETENESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum KrausOperator {
    Pauli(PauliString),
    /// Row-major `2^arity x 2^arity` matrix.
    Matrix(Vec<C64>),
}

/// CPTP map `ρ ↦ Σ_k E_k ρ E_k†` with `E_k = coefficient_k · operator_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    arity: usize,
    operators: Vec<(f64, KrausOperator)>,
}

impl KrausChannel {
    /// Checks `Σ E_k† E_k = I` within `1e-10`.
    pub fn new(arity: usize, operators: Vec<(f64, KrausOperator)>) -> Result<Self> {
        let dim = 1usize << arity;
        for (_, op) in &operators {
            match op {
                KrausOperator::Pauli(p) if p.num_qubits() != arity => {
                    return Err(Error::LengthMismatch { left: arity, right: p.num_qubits() })
                }
                KrausOperator::Matrix(m) if m.len() != dim * dim => {
                    return Err(Error::DimensionMismatch { expected: dim * dim, got: m.len() })
                }
                _ => {}
            }
        }
        let all_pauli = operators.iter().all(|(_, op)| matches!(op, KrausOperator::Pauli(_)));
        let deviation = if all_pauli {
            // P†P = I for every Pauli string
            (operators.iter().map(|(c, _)| c * c).sum::<f64>() - 1.0).abs()
        } else {
            let mut acc = vec![C64::new(0.0, 0.0); dim * dim];
            for (c, op) in &operators {
                let m = match op {
                    KrausOperator::Pauli(p) => p.matrix(),
                    KrausOperator::Matrix(m) => m.clone(),
                };
                for i in 0..dim {
                    for j in 0..dim {
                        acc[i * dim + j] +=
                            (0..dim).map(|k| m[k * dim + i].conj() * m[k * dim + j]).sum::<C64>() * (c * c);
                    }
                }
            }
            (0..dim)
                .flat_map(|i| (0..dim).map(move |j| (i, j)))
                .map(|(i, j)| (acc[i * dim + j] - if i == j { 1.0 } else { 0.0 }).norm())
                .fold(0.0, f64::max)
        };
        if deviation > COMPLETENESS_TOL {
            return Err(Error::IncompleteChannel { deviation });
        }
        Ok(Self { arity, operators })
    }

    /// Mixed-unitary Pauli channel from `(probability, P)` pairs: `E_i = √p_i P_i`.
    pub fn pauli_mixture(arity: usize, terms: Vec<(f64, PauliString)>) -> Result<Self> {
        let mut ops = Vec::with_capacity(terms.len());
        for (p, op) in terms {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability(p));
            }
            ops.push((p.sqrt(), KrausOperator::Pauli(op)));
        }
        Self::new(arity, ops)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn operators(&self) -> &[(f64, KrausOperator)] {
        &self.operators
    }
}

/// `Σ_k E_k ρ E_k†` with the channel's qubit `j` acting on `targets[j]`.
pub fn apply_channel(rho: &DensityMatrix, channel: &KrausChannel, targets: &[usize]) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    if targets.len() != channel.arity {
        return Err(Error::DimensionMismatch { expected: channel.arity, got: targets.len() });
    }
    check_indices(targets, n)?;
    let mut out = vec![C64::new(0.0, 0.0); rho.entries().len()];
    let mut work = rho.entries().to_vec();
    for (c, op) in channel.operators() {
        work.copy_from_slice(rho.entries());
        match op {
            KrausOperator::Pauli(p) => {
                let e = p.embed(targets, n)?;
                let (x, z) = (e.x_mask() as usize, e.z_mask() as usize);
                let coeff = e.xz_coefficient();
                kernel::apply_xz(&mut work, x << n, z << n, coeff);
                kernel::apply_xz(&mut work, x, z, coeff.conj());
            }
            KrausOperator::Matrix(m) => {
                let rows: Vec<usize> = targets.iter().map(|t| t + n).collect();
                let conj: Vec<C64> = m.iter().map(|a| a.conj()).collect();
                kernel::apply_kq(&mut work, &rows, m, 0, 0);
                kernel::apply_kq(&mut work, targets, &conj, 0, 0);
            }
        }
        let w = c * c;
        out.iter_mut().zip(&work).for_each(|(o, v)| *o += v * w);
    }
    Ok(DensityMatrix::from_raw(n, out))
}
