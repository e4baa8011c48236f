use num_complex::Complex64 as C64;
use std::f64::consts::FRAC_1_SQRT_2;

use super::kernel;
use super::state::{check_indices, DensityMatrix, StateVector, NORM_TOL};
use crate::error::{Error, Result};

/// Row-major 2x2 complex matrix.
pub type Matrix2 = [C64; 4];

const O: C64 = C64::new(0.0, 0.0);
const L: C64 = C64::new(1.0, 0.0);

pub const PAULI_X: Matrix2 = [O, L, L, O];
pub const PAULI_Y: Matrix2 = [O, C64::new(0.0, -1.0), C64::new(0.0, 1.0), O];
pub const PAULI_Z: Matrix2 = [L, O, O, C64::new(-1.0, 0.0)];
pub const HADAMARD: Matrix2 = [
    C64::new(FRAC_1_SQRT_2, 0.0),
    C64::new(FRAC_1_SQRT_2, 0.0),
    C64::new(FRAC_1_SQRT_2, 0.0),
    C64::new(-FRAC_1_SQRT_2, 0.0),
];

/// A control condition: the gate fires when `qubit` reads `on_one`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub on_one: bool,
}

impl Control {
    pub fn one(qubit: usize) -> Self {
        Self { qubit, on_one: true }
    }

    pub fn zero(qubit: usize) -> Self {
        Self { qubit, on_one: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    /// Single-qubit `unitary` on `target`, conditioned on every control.
    Controlled {
        controls: Vec<Control>,
        target: usize,
        unitary: Matrix2,
    },
    /// Arbitrary unitary; matrix index bit `j` is `targets[j]`.
    Unitary {
        targets: Vec<usize>,
        matrix: Vec<C64>,
    },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    /// Multi-controlled X firing on the exact control pattern given.
    pub fn mcx(controls: Vec<Control>, target: usize) -> Self {
        Gate::Controlled { controls, target, unitary: PAULI_X }
    }

    /// Every qubit the gate touches, controls included.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::X(q) | Gate::Z(q) => vec![*q],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Controlled { controls, target, .. } => {
                controls.iter().map(|c| c.qubit).chain(std::iter::once(*target)).collect()
            }
            Gate::Unitary { targets, .. } => targets.clone(),
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        check_indices(&self.qubits(), num_qubits)?;
        match self {
            Gate::Controlled { unitary, .. } => check_unitary(unitary, 2),
            Gate::Unitary { targets, matrix } => {
                let dim = 1usize << targets.len();
                if matrix.len() != dim * dim {
                    return Err(Error::DimensionMismatch { expected: dim * dim, got: matrix.len() });
                }
                check_unitary(matrix, dim)
            }
            _ => Ok(()),
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Controlled { controls, target, unitary } => Gate::Controlled {
                controls: controls.clone(),
                target: *target,
                unitary: dagger(unitary, 2).try_into().expect("2x2"),
            },
            Gate::Unitary { targets, matrix } => {
                Gate::Unitary { targets: targets.clone(), matrix: dagger(matrix, 1 << targets.len()) }
            }
            g => g.clone(),
        }
    }

    /// Applies to a flat amplitude array; `shift` offsets every qubit index
    /// and `conjugate` uses the elementwise conjugate matrix.
    fn apply_raw(&self, amps: &mut [C64], shift: usize, conjugate: bool) {
        let cj = |m: &[C64]| -> Vec<C64> {
            if conjugate {
                m.iter().map(|a| a.conj()).collect()
            } else {
                m.to_vec()
            }
        };
        match self {
            Gate::H(q) => kernel::apply_1q(amps, q + shift, &HADAMARD, 0, 0),
            Gate::X(q) => kernel::apply_x(amps, q + shift, 0, 0),
            Gate::Z(q) => kernel::apply_1q(amps, q + shift, &PAULI_Z, 0, 0),
            Gate::Cnot { control, target } => {
                let m = 1 << (control + shift);
                kernel::apply_x(amps, target + shift, m, m)
            }
            Gate::Controlled { controls, target, unitary } => {
                let (mut mask, mut val) = (0, 0);
                for c in controls {
                    mask |= 1 << (c.qubit + shift);
                    if c.on_one {
                        val |= 1 << (c.qubit + shift);
                    }
                }
                if *unitary == PAULI_X {
                    kernel::apply_x(amps, target + shift, mask, val)
                } else {
                    let u: Matrix2 = cj(unitary).try_into().expect("2x2");
                    kernel::apply_1q(amps, target + shift, &u, mask, val)
                }
            }
            Gate::Unitary { targets, matrix } => {
                let t: Vec<usize> = targets.iter().map(|q| q + shift).collect();
                kernel::apply_kq(amps, &t, &cj(matrix), 0, 0)
            }
        }
    }
}

fn dagger(m: &[C64], dim: usize) -> Vec<C64> {
    let mut out = vec![O; dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            out[c * dim + r] = m[r * dim + c].conj();
        }
    }
    out
}

/// Checks `U†U = I` entrywise within `1e-12`.
pub fn check_unitary(m: &[C64], dim: usize) -> Result<()> {
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let v: C64 = (0..dim).map(|k| m[k * dim + i].conj() * m[k * dim + j]).sum();
            let target = if i == j { L } else { O };
            worst = worst.max((v - target).norm());
        }
    }
    if worst > NORM_TOL {
        return Err(Error::NotUnitary { deviation: worst });
    }
    Ok(())
}

/// States that gates act on: `U|ψ⟩` or `UρU†`.
pub trait Evolve: Sized + Clone {
    fn num_qubits(&self) -> usize;

    /// In-place application without validation.
    #[doc(hidden)]
    fn apply_unchecked(&mut self, gate: &Gate);

    fn apply_in_place(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits())?;
        self.apply_unchecked(gate);
        Ok(())
    }
}

impl Evolve for StateVector {
    fn num_qubits(&self) -> usize {
        StateVector::num_qubits(self)
    }

    fn apply_unchecked(&mut self, gate: &Gate) {
        gate.apply_raw(self.amplitudes_mut(), 0, false);
    }
}

impl Evolve for DensityMatrix {
    fn num_qubits(&self) -> usize {
        DensityMatrix::num_qubits(self)
    }

    fn apply_unchecked(&mut self, gate: &Gate) {
        let n = DensityMatrix::num_qubits(self);
        let e = self.entries_mut();
        gate.apply_raw(e, n, false);
        gate.apply_raw(e, 0, true);
    }
}

pub fn apply_gate<S: Evolve>(state: &S, gate: &Gate) -> Result<S> {
    let mut out = state.clone();
    out.apply_in_place(gate)?;
    Ok(out)
}

/// Validates every gate first, then applies them in order.
pub fn apply_circuit<S: Evolve>(state: &S, gates: &[Gate]) -> Result<S> {
    for g in gates {
        g.validate(state.num_qubits())?;
    }
    let mut out = state.clone();
    gates.iter().for_each(|g| out.apply_unchecked(g));
    Ok(out)
}

/// Dense matrix of a gate on `num_qubits` qubits (test and audit helper).
pub fn gate_matrix(gate: &Gate, num_qubits: usize) -> Result<Vec<C64>> {
    gate.validate(num_qubits)?;
    let dim = 1usize << num_qubits;
    let mut cols = vec![O; dim * dim];
    for c in 0..dim {
        let mut col = vec![O; dim];
        col[c] = L;
        gate.apply_raw(&mut col, 0, false);
        for r in 0..dim {
            cols[r * dim + c] = col[r];
        }
    }
    Ok(cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[C64], b: &[C64], d: usize) -> Vec<C64> {
        let mut out = vec![O; d * d];
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = (0..d).map(|k| a[i * d + k] * b[k * d + j]).sum();
            }
        }
        out
    }

    fn max_diff(a: &[C64], b: &[C64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn hadamard_on_zero_is_plus() {
        let out = apply_gate(&StateVector::zero(1).unwrap(), &Gate::H(0)).unwrap();
        assert!((out.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((out.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn x_twice_is_identity() {
        let psi =
            StateVector::normalized(2, vec![C64::new(0.1, 0.2), C64::new(0.3, -0.1), L, C64::new(0.0, 0.5)]).unwrap();
        let out = apply_circuit(&psi, &[Gate::X(1), Gate::X(1)]).unwrap();
        assert!(max_diff(out.amplitudes(), psi.amplitudes()) < 1e-15);
    }

    #[test]
    fn cnot_on_10_gives_11() {
        let out = apply_gate(&StateVector::from_bits("10").unwrap(), &Gate::cnot(0, 1)).unwrap();
        assert_eq!(out, StateVector::from_bits("11").unwrap());
    }

    #[test]
    fn hadamard_conjugation_identities() {
        let hzh = mat_mul(&mat_mul(&HADAMARD, &PAULI_Z, 2), &HADAMARD, 2);
        let hxh = mat_mul(&mat_mul(&HADAMARD, &PAULI_X, 2), &HADAMARD, 2);
        assert!(max_diff(&hzh, &PAULI_X) < 1e-12);
        assert!(max_diff(&hxh, &PAULI_Z) < 1e-12);
    }

    #[test]
    fn rejects_bad_gates() {
        let psi = StateVector::zero(2).unwrap();
        assert!(matches!(apply_gate(&psi, &Gate::X(2)), Err(Error::QubitOutOfRange { .. })));
        assert!(matches!(apply_gate(&psi, &Gate::cnot(1, 1)), Err(Error::DuplicateQubit(1))));
        let bad = Gate::Unitary { targets: vec![0], matrix: vec![L, L, O, L] };
        assert!(matches!(apply_gate(&psi, &bad), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn mixed_polarity_control() {
        // fires only on qubit0 = 0, qubit1 = 1
        let g = Gate::mcx(vec![Control::zero(0), Control::one(1)], 2);
        for idx in 0..8 {
            let out = apply_gate(&StateVector::basis(3, idx).unwrap(), &g).unwrap();
            let expect = if idx & 0b011 == 0b010 { idx ^ 0b100 } else { idx };
            assert_eq!(out, StateVector::basis(3, expect).unwrap());
        }
    }

    #[test]
    fn density_evolution_matches_pure() {
        let psi =
            StateVector::normalized(2, vec![C64::new(0.1, 0.2), C64::new(0.3, -0.1), L, C64::new(0.0, 0.5)]).unwrap();
        let s = C64::new(0.0, FRAC_1_SQRT_2);
        let raw = Gate::Unitary {
            targets: vec![1],
            matrix: vec![C64::new(FRAC_1_SQRT_2, 0.0), s, s, C64::new(FRAC_1_SQRT_2, 0.0)],
        };
        let gates = [
            Gate::H(0),
            Gate::cnot(0, 1),
            raw,
            Gate::Controlled { controls: vec![Control::one(1)], target: 0, unitary: PAULI_Y },
        ];
        let pure = apply_circuit(&psi, &gates).unwrap().to_density().unwrap();
        let mixed = apply_circuit(&psi.to_density().unwrap(), &gates).unwrap();
        assert!(pure.max_abs_diff(&mixed) < 1e-12);
    }

    #[test]
    fn inverse_undoes() {
        let s = C64::new(0.0, FRAC_1_SQRT_2);
        let raw = Gate::Unitary {
            targets: vec![1, 0],
            matrix: gate_matrix(
                &Gate::Controlled {
                    controls: vec![Control::one(0)],
                    target: 1,
                    unitary: [C64::new(FRAC_1_SQRT_2, 0.0), s, s, C64::new(FRAC_1_SQRT_2, 0.0)],
                },
                2,
            )
            .unwrap(),
        };
        let psi =
            StateVector::normalized(2, vec![C64::new(0.1, 0.2), C64::new(0.3, -0.1), L, C64::new(0.0, 0.5)]).unwrap();
        let out = apply_circuit(&psi, &[raw.clone(), raw.inverse()]).unwrap();
        assert!(max_diff(out.amplitudes(), psi.amplitudes()) < 1e-12);
    }
}
