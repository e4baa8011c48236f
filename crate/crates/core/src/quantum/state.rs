use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest register a [`StateVector`] may hold (dimension 65536).
pub const MAX_QUBITS: usize = 16;
/// Largest register a [`DensityMatrix`] may hold (4096 x 4096 entries).
pub const MAX_DENSITY_QUBITS: usize = 12;

pub(crate) const NORM_TOL: f64 = 1e-12;

fn check_qubit_count(num_qubits: usize, cap: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > cap {
        return Err(Error::TooManyQubits { num_qubits, cap });
    }
    Ok(())
}

pub(crate) fn check_indices(indices: &[usize], num_qubits: usize) -> Result<()> {
    let mut seen = 0u64;
    for &q in indices {
        if q >= num_qubits {
            return Err(Error::QubitOutOfRange { index: q, num_qubits });
        }
        if seen >> q & 1 == 1 {
            return Err(Error::DuplicateQubit(q));
        }
        seen |= 1 << q;
    }
    Ok(())
}

/// Pure state of `n` qubits, little-endian: bit `q` of a basis index is qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(num_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        check_qubit_count(num_qubits, MAX_QUBITS)?;
        if amps.len() != 1 << num_qubits {
            return Err(Error::DimensionMismatch { expected: 1 << num_qubits, got: amps.len() });
        }
        let sv = Self { num_qubits, amps };
        let n2 = sv.norm_sqr();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(sv)
    }

    /// Builds a state and rescales it to unit norm.
    pub fn normalized(num_qubits: usize, mut amps: Vec<C64>) -> Result<Self> {
        let n2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if n2 == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        let s = 1.0 / n2.sqrt();
        amps.iter_mut().for_each(|a| *a *= s);
        Self::new(num_qubits, amps)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(num_qubits, MAX_QUBITS)?;
        if index >= 1 << num_qubits {
            return Err(Error::DimensionMismatch { expected: 1 << num_qubits, got: index });
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << num_qubits];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    /// Computational basis state from a bit string written qubit 0 first,
    /// e.g. `"10"` has qubit 0 set.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let mut index = 0;
        for (q, c) in bits.chars().enumerate() {
            match c {
                '0' => {}
                '1' => index |= 1 << q,
                _ => return Err(Error::Config(format!("bad basis label {bits:?}"))),
            }
        }
        Self::basis(bits.chars().count(), index)
    }

    /// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn bloch(theta: f64, phi: f64) -> Self {
        let amps = vec![C64::new((theta / 2.0).cos(), 0.0), C64::from_polar((theta / 2.0).sin(), phi)];
        Self { num_qubits: 1, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨self|other⟩|`, insensitive to global phase.
    pub fn overlap(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// `self ⊗ other`: `self` occupies the low qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.num_qubits + other.num_qubits;
        check_qubit_count(n, MAX_QUBITS)?;
        let mut amps = Vec::with_capacity(1 << n);
        for b in &other.amps {
            for a in &self.amps {
                amps.push(a * b);
            }
        }
        Ok(Self { num_qubits: n, amps })
    }

    /// Appends `count` qubits in `|0⟩` above the existing ones.
    pub fn with_ancillas(&self, count: usize) -> Result<StateVector> {
        let n = self.num_qubits + count;
        check_qubit_count(n, MAX_QUBITS)?;
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[..self.amps.len()].copy_from_slice(&self.amps);
        Ok(Self { num_qubits: n, amps })
    }

    /// Probability that measuring `qubit` in the Z basis gives `value`.
    pub fn bit_probability(&self, qubit: usize, value: bool) -> Result<f64> {
        check_indices(&[qubit], self.num_qubits)?;
        let want = if value { 1 << qubit } else { 0 };
        Ok(self.amps.iter().enumerate().filter(|(i, _)| i & (1 << qubit) == want).map(|(_, a)| a.norm_sqr()).sum())
    }

    /// Projects `qubit` onto `value`, renormalizes and removes that qubit.
    pub fn collapse_and_remove(&self, qubit: usize, value: bool) -> Result<StateVector> {
        let prob = self.bit_probability(qubit, value)?;
        if prob <= 0.0 {
            return Err(Error::NotNormalized(prob));
        }
        if self.num_qubits == 1 {
            return Err(Error::TooManyQubits { num_qubits: 0, cap: MAX_QUBITS });
        }
        let scale = 1.0 / prob.sqrt();
        let low = (1usize << qubit) - 1;
        let vbit = if value { 1usize << qubit } else { 0 };
        let amps = (0..self.dim() / 2)
            .map(|j| {
                let i = (j & low) | ((j & !low) << 1) | vbit;
                self.amps[i] * scale
            })
            .collect();
        Ok(Self { num_qubits: self.num_qubits - 1, amps })
    }

    /// True when every listed qubit is in `|0⟩` with certainty.
    pub fn qubits_are_zero(&self, qubits: &[usize]) -> Result<bool> {
        check_indices(qubits, self.num_qubits)?;
        let mask: usize = qubits.iter().map(|q| 1 << q).sum();
        let stray: f64 = self.amps.iter().enumerate().filter(|(i, _)| i & mask != 0).map(|(_, a)| a.norm_sqr()).sum();
        Ok(stray < NORM_TOL)
    }

    /// `⟨r|Tr_rest(|ψ⟩⟨ψ|)|r⟩` where `r` lives on `keep` (reference qubit `j`
    /// is `keep[j]`). Avoids building the reduced density matrix.
    pub fn reduced_expectation(&self, keep: &[usize], reference: &StateVector) -> Result<f64> {
        check_indices(keep, self.num_qubits)?;
        if reference.num_qubits != keep.len() {
            return Err(Error::DimensionMismatch { expected: keep.len(), got: reference.num_qubits });
        }
        let keep_mask: usize = keep.iter().map(|q| 1 << q).sum();
        let rest = ((1usize << self.num_qubits) - 1) & !keep_mask;
        let offsets = scatter_offsets(keep);
        let mut total = 0.0;
        super::kernel::for_each_submask(rest, |r| {
            let amp: C64 = offsets.iter().zip(&reference.amps).map(|(off, c)| c.conj() * self.amps[r | off]).sum();
            total += amp.norm_sqr();
        });
        Ok(total)
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_pure(self)
    }
}

/// `offsets[j]` is the global index with the bits of `j` scattered onto `qubits`.
pub(crate) fn scatter_offsets(qubits: &[usize]) -> Vec<usize> {
    (0..1usize << qubits.len())
        .map(|j| qubits.iter().enumerate().filter(|(b, _)| j >> b & 1 == 1).map(|(_, &q)| 1usize << q).sum())
        .collect()
}

/// Mixed state over `n` qubits, row-major `2^n x 2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    entries: Vec<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    pub fn new(num_qubits: usize, entries: Vec<C64>) -> Result<Self> {
        check_qubit_count(num_qubits, MAX_DENSITY_QUBITS)?;
        let dim = 1usize << num_qubits;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: entries.len() });
        }
        let rho = Self { num_qubits, entries };
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_raw(num_qubits: usize, entries: Vec<C64>) -> Self {
        Self { num_qubits, entries }
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for r in 0..dim {
            for c in r..dim {
                if (self.get(r, c) - self.get(c, r).conj()).norm() > NORM_TOL {
                    return Err(Error::InvalidDensityMatrix(format!("not Hermitian at ({r}, {c})")));
                }
            }
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        if let Some(&min) = self.eigenvalues().iter().min_by(|a, b| a.total_cmp(b)) {
            if min < -1e-10 {
                return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {min}")));
            }
        }
        Ok(())
    }

    pub fn from_pure(state: &StateVector) -> Result<Self> {
        check_qubit_count(state.num_qubits, MAX_DENSITY_QUBITS)?;
        let a = &state.amps;
        let entries = a.iter().flat_map(|r| a.iter().map(move |c| r * c.conj())).collect();
        Ok(Self { num_qubits: state.num_qubits, entries })
    }

    /// `Σ w_i |ψ_i⟩⟨ψ_i|` for nonnegative weights summing to one.
    pub fn mixture(components: &[(f64, StateVector)]) -> Result<Self> {
        let first = components.first().ok_or_else(|| Error::InvalidDensityMatrix("empty mixture".into()))?;
        let n = first.1.num_qubits;
        check_qubit_count(n, MAX_DENSITY_QUBITS)?;
        let dim = 1usize << n;
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for (w, psi) in components {
            if *w < 0.0 || psi.num_qubits != n {
                return Err(Error::InvalidDensityMatrix("bad mixture component".into()));
            }
            for r in 0..dim {
                for c in 0..dim {
                    entries[r * dim + c] += psi.amps[r] * psi.amps[c].conj() * *w;
                }
            }
        }
        Self::new(n, entries)
    }

    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        check_qubit_count(num_qubits, MAX_DENSITY_QUBITS)?;
        let dim = 1usize << num_qubits;
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = C64::new(1.0 / dim as f64, 0.0);
        }
        Ok(Self { num_qubits, entries })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [C64] {
        &mut self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i).re).sum()
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: psi.dim() });
        }
        let dim = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for r in 0..dim {
            let row: C64 = (0..dim).map(|c| self.entries[r * dim + c] * psi.amps[c]).sum();
            acc += psi.amps[r].conj() * row;
        }
        Ok(acc.re)
    }

    /// Largest entrywise distance to another density matrix.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Reduced state on `keep`; reduced qubit `j` is `keep[j]`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidPartition("partial trace needs at least one kept qubit".into()));
        }
        check_indices(keep, self.num_qubits)?;
        let keep_mask: usize = keep.iter().map(|q| 1 << q).sum();
        let rest = (self.dim() - 1) & !keep_mask;
        let offsets = scatter_offsets(keep);
        let sub = offsets.len();
        let dim = self.dim();
        let mut out = vec![C64::new(0.0, 0.0); sub * sub];
        super::kernel::for_each_submask(rest, |r| {
            for (a, oa) in offsets.iter().enumerate() {
                for (b, ob) in offsets.iter().enumerate() {
                    out[a * sub + b] += self.entries[(r | oa) * dim + (r | ob)];
                }
            }
        });
        Ok(Self { num_qubits: keep.len(), entries: out })
    }

    pub fn to_matrix(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dim(), self.dim(), &self.entries)
    }

    /// Real eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.to_matrix().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }
}
