use super::layout::{Block, CodeLayout};
use crate::error::{Error, Result};
use crate::pauli::Sign;
use crate::quantum::{Control, Gate, StateVector};

/// CNOT fan-out from each data qubit onto its ancillas.
pub fn build_encoder(layout: &CodeLayout) -> Vec<Gate> {
    layout.blocks().iter().flat_map(|b| b.ancillas.iter().map(move |&a| Gate::cnot(b.data, a))).collect()
}

/// Multi-controlled X gates flipping the data qubit for every ancilla pattern
/// of weight greater than `k`. The patterns are mutually exclusive, so the
/// product is `X ⊗ P + I ⊗ (I - P)` with `P` the projector onto those patterns.
pub fn correction_gates(block: &Block, k: usize) -> Vec<Gate> {
    let m = block.ancillas.len();
    (0u32..1 << m)
        .filter(|pattern| pattern.count_ones() as usize > k)
        .map(|pattern| {
            let controls = block
                .ancillas
                .iter()
                .enumerate()
                .map(|(j, &q)| Control { qubit: q, on_one: pattern >> j & 1 == 1 })
                .collect();
            Gate::mcx(controls, block.data)
        })
        .collect()
}

/// Inverse encoder followed by the coherent majority correction, per block.
pub fn build_decoder(layout: &CodeLayout) -> Vec<Gate> {
    let mut gates: Vec<Gate> = build_encoder(layout).iter().rev().map(Gate::inverse).collect();
    for b in layout.blocks() {
        gates.extend(correction_gates(&b, layout.k()));
    }
    gates
}

/// Measurement-based alternative to the coherent correction: flip the data
/// qubit iff more than `k` ancillas read `-1` after the inverse encoder.
pub fn majority_decode(ancilla_readings: &[Sign], k: usize) -> bool {
    ancilla_readings.iter().filter(|s| s.is_minus()).count() > k
}

/// Places `input` on the layout's data qubits (input qubit `j` on data qubit
/// `j`) with every ancilla in `|0⟩`.
pub fn embed_input(layout: &CodeLayout, input: &StateVector) -> Result<StateVector> {
    let data = layout.data_qubits();
    if input.num_qubits() != data.len() {
        return Err(Error::DimensionMismatch { expected: data.len(), got: input.num_qubits() });
    }
    let offsets: Vec<usize> = (0..input.dim())
        .map(|i| data.iter().enumerate().filter(|(j, _)| i >> j & 1 == 1).map(|(_, &q)| 1 << q).sum())
        .collect();
    let mut amps = vec![num_complex::Complex64::new(0.0, 0.0); 1 << layout.total_qubits()];
    for (i, a) in input.amplitudes().iter().enumerate() {
        amps[offsets[i]] = *a;
    }
    StateVector::new(layout.total_qubits(), amps)
}

/// Applies the encoder; with `validate`, first checks that every ancilla is `|0⟩`.
pub fn encode(layout: &CodeLayout, state: &StateVector, validate: bool) -> Result<StateVector> {
    if validate {
        for b in layout.blocks() {
            for &a in &b.ancillas {
                if !state.qubits_are_zero(&[a])? {
                    return Err(Error::AncillaNotReset(a));
                }
            }
        }
    }
    crate::quantum::apply_circuit(state, &build_encoder(layout))
}
