use serde::Serialize;

use super::generators::bell_code_generators;
use super::rotation::rotation_correct;
use crate::error::{Error, Result};
use crate::pauli::{measure_syndrome_deterministic, GeneratorSet, PauliString, Syndrome};
use crate::quantum::{apply_circuit, prepare_bell, Gate, StateVector};
use crate::repetition::{build_decoder, embed_input, encode, phaseflip_sandwich, ChannelKind, CodeLayout, LayoutKind};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShortDistanceOutcome {
    #[serde(serialize_with = "crate::stabilizer::serialize_display")]
    pub syndrome: Syndrome,
    #[serde(serialize_with = "crate::stabilizer::serialize_display")]
    pub correction: PauliString,
    pub fidelity: f64,
}

/// Encoded `|φ+⟩` with the Bell-code generators and decoder, built once per `k`.
#[derive(Debug, Clone)]
pub struct ShortDistancePipeline {
    k: usize,
    layout: CodeLayout,
    generators: GeneratorSet,
    encoded: StateVector,
    decoder: Vec<Gate>,
    sandwich: Vec<Gate>,
    reference: StateVector,
}

impl ShortDistancePipeline {
    pub fn new(k: usize) -> Result<Self> {
        let layout = CodeLayout::new(k, LayoutKind::BipartiteBell)?;
        let reference = prepare_bell(false, false);
        Ok(Self {
            k,
            layout,
            generators: bell_code_generators(k)?,
            encoded: encode(&layout, &embed_input(&layout, &reference)?, true)?,
            decoder: build_decoder(&layout),
            sandwich: phaseflip_sandwich(&layout),
            reference,
        })
    }

    pub fn layout(&self) -> &CodeLayout {
        &self.layout
    }

    pub fn encoded(&self) -> &StateVector {
        &self.encoded
    }

    /// Measures every generator of the corrupted state through an ancilla
    /// circuit, then applies the rotation-rule correction before decoding.
    pub fn run(&self, error: &PauliString) -> Result<ShortDistanceOutcome> {
        if error.num_qubits() != self.layout.total_qubits() {
            return Err(Error::LengthMismatch { left: self.layout.total_qubits(), right: error.num_qubits() });
        }
        if !error.is_bit_flip() {
            return Err(Error::NotBitFlip(error.to_string()));
        }
        self.run_state(error.apply(&self.encoded)?)
    }

    /// As [`ShortDistancePipeline::run`] for the flip pattern `mask` of
    /// `channel`; phase flips go through the Hadamard sandwich.
    pub fn run_pattern(&self, channel: ChannelKind, mask: u64) -> Result<ShortDistanceOutcome> {
        let n = self.layout.total_qubits();
        match channel {
            ChannelKind::BitFlip => self.run(&PauliString::bit_flip(n, mask)),
            ChannelKind::PhaseFlip => {
                let rotated = apply_circuit(&self.encoded, &self.sandwich)?;
                self.run_state(apply_circuit(&channel.error(n, mask).apply(&rotated)?, &self.sandwich)?)
            }
        }
    }

    fn run_state(&self, mut state: StateVector) -> Result<ShortDistanceOutcome> {
        let mut signs = Vec::with_capacity(self.generators.len());
        for g in self.generators.generators() {
            let (sign, post) = measure_syndrome_deterministic(&state, g)?;
            signs.push(sign);
            state = post;
        }
        let syndrome = Syndrome::new(signs);
        let correction = rotation_correct(&syndrome, self.k)?;
        let corrected = correction.apply(&state)?;
        let decoded = apply_circuit(&corrected, &self.decoder)?;
        let fidelity = decoded.reduced_expectation(&self.layout.data_qubits(), &self.reference)?.sqrt();
        Ok(ShortDistanceOutcome { syndrome, correction, fidelity })
    }
}

pub fn short_distance_pipeline(k: usize, error: &PauliString) -> Result<ShortDistanceOutcome> {
    ShortDistancePipeline::new(k)?.run(error)
}

/// Whether a `Z`-only error leaves the encoded Bell pair unchanged, judged
/// on the statevector.
pub fn phase_flip_transparency_check(k: usize, error: &PauliString) -> Result<bool> {
    if error.x_mask() != 0 || !error.is_hermitian() {
        return Err(Error::NotPhaseFlip(error.to_string()));
    }
    let pipe = ShortDistancePipeline::new(k)?;
    let after = error.apply(pipe.encoded())?;
    Ok((after.overlap(pipe.encoded())? - 1.0).abs() < 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let out = short_distance_pipeline(1, &"XXIXII".parse().unwrap()).unwrap();
        assert_eq!(out.syndrome.to_string(), "+1 -1 +1 -1 -1 +1");
        assert_eq!(out.correction.to_string(), "XXIXII");
        assert!((out.fidelity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_error() {
        let out = short_distance_pipeline(1, &PauliString::identity(6)).unwrap();
        assert!(out.correction.is_identity_letters());
        assert!((out.fidelity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transparency() {
        assert!(phase_flip_transparency_check(1, &"ZZIIII".parse().unwrap()).unwrap());
        assert!(!phase_flip_transparency_check(1, &"ZIIIII".parse().unwrap()).unwrap());
        assert!(phase_flip_transparency_check(1, &PauliString::identity(6)).unwrap());
        assert!(phase_flip_transparency_check(1, &"XIIIII".parse().unwrap()).is_err());
    }

    #[test]
    fn rejects_non_bit_flip() {
        assert!(short_distance_pipeline(1, &"ZIIIII".parse().unwrap()).is_err());
        assert!(short_distance_pipeline(1, &"XII".parse().unwrap()).is_err());
    }
}
