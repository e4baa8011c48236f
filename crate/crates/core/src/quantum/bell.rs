use std::fmt;

use super::gate::{apply_circuit, Gate};
use super::state::StateVector;

/// The four Bell states labelled by `(m, n)`:
/// `(|0⟩|m⟩ + (-1)^n |1⟩|1⊕m⟩)/√2`, qubit 0 is A and qubit 1 is B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus];

    pub fn from_bits(m: bool, n: bool) -> Self {
        match (m, n) {
            (false, false) => BellState::PhiPlus,
            (false, true) => BellState::PhiMinus,
            (true, false) => BellState::PsiPlus,
            (true, true) => BellState::PsiMinus,
        }
    }

    /// `(m, n)`.
    pub fn bits(self) -> (bool, bool) {
        match self {
            BellState::PhiPlus => (false, false),
            BellState::PhiMinus => (false, true),
            BellState::PsiPlus => (true, false),
            BellState::PsiMinus => (true, true),
        }
    }

    pub fn state(self) -> StateVector {
        let (m, n) = self.bits();
        prepare_bell(m, n)
    }
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
        })
    }
}

/// H on A and CNOT A→B give `|φ+⟩`; then `Z^n` and `X^m` on B.
pub fn prepare_bell(m: bool, n: bool) -> StateVector {
    let mut gates = vec![Gate::H(0), Gate::cnot(0, 1)];
    gates.extend(bell_transform(BellState::PhiPlus, BellState::from_bits(m, n)));
    apply_circuit(&StateVector::zero(2).expect("2 qubits"), &gates).expect("valid Bell circuit")
}

/// Gates on B (in application order) taking `source` to `target` up to a
/// global phase. Each Bell state is `(I ⊗ X^m Z^n)|φ+⟩`.
pub fn bell_transform(source: BellState, target: BellState) -> Vec<Gate> {
    let (m1, n1) = source.bits();
    let (m2, n2) = target.bits();
    let mut gates = Vec::new();
    if n1 != n2 {
        gates.push(Gate::Z(1));
    }
    if m1 != m2 {
        gates.push(Gate::X(1));
    }
    gates
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn from_table(amps: [f64; 4]) -> StateVector {
        // amps indexed by |AB⟩ written A first; index = A + 2B
        let v = vec![amps[0], amps[2], amps[1], amps[3]];
        StateVector::new(2, v.into_iter().map(|a| C64::new(a * FRAC_1_SQRT_2, 0.0)).collect()).unwrap()
    }

    #[test]
    fn prepared_states() {
        let phi_plus = from_table([1.0, 0.0, 0.0, 1.0]);
        let psi_minus = from_table([0.0, 1.0, -1.0, 0.0]);
        assert!((prepare_bell(false, false).inner(&phi_plus).unwrap().re - 1.0).abs() < 1e-12);
        assert!((prepare_bell(true, true).inner(&psi_minus).unwrap().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transforms_between_all_pairs() {
        for s in BellState::ALL {
            for t in BellState::ALL {
                let out = apply_circuit(&s.state(), &bell_transform(s, t)).unwrap();
                assert!((out.overlap(&t.state()).unwrap() - 1.0).abs() < 1e-12, "{s} -> {t}");
            }
        }
        assert_eq!(bell_transform(BellState::PhiPlus, BellState::PsiPlus), vec![Gate::X(1)]);
        assert!(bell_transform(BellState::PhiPlus, BellState::PhiPlus).is_empty());
        assert_eq!(bell_transform(BellState::PhiPlus, BellState::PsiMinus), vec![Gate::Z(1), Gate::X(1)]);
    }
}
