use super::circuits::{build_decoder, embed_input, encode};
use super::layout::{CodeLayout, LayoutKind};
use super::noise::{phaseflip_sandwich, ChannelKind};
use crate::error::Result;
use crate::quantum::{apply_circuit, prepare_bell, Gate, StateVector};

/// The worst-case or reference input for each layout: `|0⟩`, `|φ+⟩`, `|00⟩`.
pub fn default_input(kind: LayoutKind) -> StateVector {
    match kind {
        LayoutKind::Single => StateVector::zero(1).expect("1 qubit"),
        LayoutKind::BipartiteBell => prepare_bell(false, false),
        LayoutKind::BipartiteProduct => StateVector::zero(2).expect("2 qubits"),
    }
}

/// Runs one flip pattern through encode/decode and compares the data
/// qubits with the input. Encoding is done once at construction.
#[derive(Debug, Clone)]
pub struct RepetitionPipeline {
    layout: CodeLayout,
    channel: ChannelKind,
    input: StateVector,
    encoded: StateVector,
    decoder: Vec<Gate>,
    sandwich: Vec<Gate>,
}

impl RepetitionPipeline {
    pub fn new(layout: CodeLayout, channel: ChannelKind, input: StateVector) -> Result<Self> {
        let encoded = encode(&layout, &embed_input(&layout, &input)?, true)?;
        Ok(Self {
            layout,
            channel,
            input,
            encoded,
            decoder: build_decoder(&layout),
            sandwich: phaseflip_sandwich(&layout),
        })
    }

    pub fn with_default_input(layout: CodeLayout, channel: ChannelKind) -> Result<Self> {
        Self::new(layout, channel, default_input(layout.kind()))
    }

    pub fn layout(&self) -> &CodeLayout {
        &self.layout
    }

    pub fn input(&self) -> &StateVector {
        &self.input
    }

    /// The state handed to the decoder after the flip pattern `mask`.
    pub fn corrupted(&self, mask: u64) -> Result<StateVector> {
        let n = self.layout.total_qubits();
        let error = self.channel.error(n, mask);
        match self.channel {
            ChannelKind::BitFlip => error.apply(&self.encoded),
            ChannelKind::PhaseFlip => {
                let rotated = apply_circuit(&self.encoded, &self.sandwich)?;
                apply_circuit(&error.apply(&rotated)?, &self.sandwich)
            }
        }
    }

    /// Squared overlap `⟨ψ|ρ_data|ψ⟩` after decoding the pattern `mask`.
    pub fn pattern_overlap(&self, mask: u64) -> Result<f64> {
        let decoded = apply_circuit(&self.corrupted(mask)?, &self.decoder)?;
        decoded.reduced_expectation(&self.layout.data_qubits(), &self.input)
    }
}
