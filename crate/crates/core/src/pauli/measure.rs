use rand::Rng;

use super::{Letter, PauliString, Phase, Sign};
use crate::error::{Error, Result};
use crate::quantum::{apply_circuit, Control, Gate, StateVector, PAULI_X, PAULI_Y, PAULI_Z};

const DETERMINISTIC_TOL: f64 = 1e-12;

/// Ancilla-based subspace measurement of `stabilizer`: H on the ancilla, the
/// stabilizer controlled by the ancilla, H again. A `-1` sign on the
/// stabilizer becomes a Z on the ancilla.
pub fn syndrome_circuit(stabilizer: &PauliString, ancilla: usize) -> Result<Vec<Gate>> {
    if !stabilizer.is_hermitian() {
        return Err(Error::NonHermitian(stabilizer.to_string()));
    }
    let mut gates = vec![Gate::H(ancilla)];
    for q in 0..stabilizer.num_qubits() {
        let unitary = match stabilizer.letter(q) {
            Letter::I => continue,
            Letter::X => PAULI_X,
            Letter::Y => PAULI_Y,
            Letter::Z => PAULI_Z,
        };
        gates.push(Gate::Controlled { controls: vec![Control::one(ancilla)], target: q, unitary });
    }
    if stabilizer.phase() == Phase::MINUS_ONE {
        gates.push(Gate::Z(ancilla));
    }
    gates.push(Gate::H(ancilla));
    Ok(gates)
}

/// Runs the circuit on `state ⊗ |0⟩_anc` and returns `P(ancilla = 0)` with the
/// post-circuit register.
fn run(state: &StateVector, stabilizer: &PauliString) -> Result<(f64, StateVector)> {
    if stabilizer.num_qubits() != state.num_qubits() {
        return Err(Error::LengthMismatch { left: stabilizer.num_qubits(), right: state.num_qubits() });
    }
    let n = state.num_qubits();
    let gates = syndrome_circuit(stabilizer, n)?;
    let out = apply_circuit(&state.with_ancillas(1)?, &gates)?;
    let p_plus = out.bit_probability(n, false)?;
    Ok((p_plus, out))
}

fn finish(out: &StateVector, ancilla: usize, sign: Sign) -> Result<(Sign, StateVector)> {
    Ok((sign, out.collapse_and_remove(ancilla, sign.is_minus())?))
}

/// Measures the stabilizer through an appended ancilla; ancilla `|0⟩` means
/// `+1`. The returned state has the ancilla removed.
pub fn measure_syndrome_circuit<R: Rng + ?Sized>(
    state: &StateVector,
    stabilizer: &PauliString,
    rng: &mut R,
) -> Result<(Sign, StateVector)> {
    let (p_plus, out) = run(state, stabilizer)?;
    let sign = if p_plus >= 1.0 - DETERMINISTIC_TOL {
        Sign::Plus
    } else if p_plus <= DETERMINISTIC_TOL {
        Sign::Minus
    } else if rng.random::<f64>() < p_plus {
        Sign::Plus
    } else {
        Sign::Minus
    };
    finish(&out, state.num_qubits(), sign)
}

/// As [`measure_syndrome_circuit`], for states known to be stabilizer
/// eigenstates; errors if the outcome is random.
pub fn measure_syndrome_deterministic(state: &StateVector, stabilizer: &PauliString) -> Result<(Sign, StateVector)> {
    let (p_plus, out) = run(state, stabilizer)?;
    let sign = if p_plus >= 1.0 - DETERMINISTIC_TOL {
        Sign::Plus
    } else if p_plus <= DETERMINISTIC_TOL {
        Sign::Minus
    } else {
        return Err(Error::NonDeterministicOutcome(p_plus));
    };
    finish(&out, state.num_qubits(), sign)
}
