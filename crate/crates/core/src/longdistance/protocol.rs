use std::collections::VecDeque;

use serde::Serialize;

use super::algebra::{combine_boundary_syndrome, local_commutation_bit, split_generators, SplitGenerators};
use super::party::{ClassicalMessage, Party, PartyView};
use crate::error::{Error, Result};
use crate::pauli::{measure_syndrome_deterministic, syndrome_circuit, GeneratorSet, PauliString, Sign, Syndrome};
use crate::quantum::{apply_circuit, prepare_bell, Gate, StateVector};
use crate::repetition::{build_decoder, embed_input, encode, phaseflip_sandwich, ChannelKind, CodeLayout, LayoutKind};
use crate::stabilizer::{bell_code_generators, rotation_correct};

/// Rejects gates that touch both parties. Qubits at or above `ancilla_floor`
/// are ancillas attached to whichever party runs the circuit and are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalityAudit {
    pub alice_mask: u64,
    pub bob_mask: u64,
    pub ancilla_floor: usize,
}

impl LocalityAudit {
    pub fn for_layout(layout: &CodeLayout) -> Self {
        Self { alice_mask: layout.alice_mask(), bob_mask: layout.bob_mask(), ancilla_floor: layout.total_qubits() }
    }

    pub fn check(&self, gates: &[Gate]) -> Result<()> {
        for g in gates {
            let qubits = g.qubits();
            let mask: u64 = qubits.iter().filter(|&&q| q < self.ancilla_floor).map(|q| 1u64 << q).sum();
            if mask & self.alice_mask != 0 && mask & self.bob_mask != 0 {
                return Err(Error::NonLocalGate { qubits });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolOutcome {
    pub transcript: Vec<ClassicalMessage>,
    #[serde(serialize_with = "crate::stabilizer::serialize_display")]
    pub alice_correction: PauliString,
    #[serde(serialize_with = "crate::stabilizer::serialize_display")]
    pub bob_correction: PauliString,
    /// Canonical-order syndrome assembled by the parties; absent without a classical channel.
    pub syndrome: Option<Vec<Sign>>,
    pub fidelity: f64,
}

/// A party's local work for one run: measure its local generators on the
/// shared state and read its boundary bit from the Pauli frame.
struct Actor {
    view: PartyView,
    local: Vec<Sign>,
    m_bit: Sign,
}

/// The two-party protocol for one code order, with precomputed encoded
/// state, decoder and basis change from the split generators to the
/// canonical Bell-code order.
#[derive(Debug, Clone)]
pub struct LongDistanceProtocol {
    k: usize,
    layout: CodeLayout,
    split: SplitGenerators,
    alice: PartyView,
    bob: PartyView,
    /// For canonical generator `j`, the split generators whose product it is.
    basis_change: Vec<u64>,
    encoded: StateVector,
    reference: StateVector,
    decoder: Vec<Gate>,
    sandwich: Vec<Gate>,
    audit: LocalityAudit,
}

impl LongDistanceProtocol {
    pub fn new(k: usize) -> Result<Self> {
        let layout = CodeLayout::new(k, LayoutKind::BipartiteBell)?;
        let split = split_generators(k)?;
        let split_set: GeneratorSet = split.generator_set()?;
        let canonical = bell_code_generators(k)?;
        let basis_change = canonical
            .generators()
            .iter()
            .map(|g| match split_set.decompose(g)? {
                Some((combo, Sign::Plus)) => Ok(combo),
                _ => Err(Error::InvalidGenerators(format!("{g} is not generated by the split basis"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let reference = prepare_bell(false, false);
        let decoder = build_decoder(&layout);
        let audit = LocalityAudit::for_layout(&layout);
        audit.check(&decoder)?;
        Ok(Self {
            k,
            alice: split.view(&layout, Party::Alice)?,
            bob: split.view(&layout, Party::Bob)?,
            layout,
            split,
            basis_change,
            encoded: encode(&layout, &embed_input(&layout, &reference)?, true)?,
            reference,
            decoder,
            sandwich: phaseflip_sandwich(&layout),
            audit,
        })
    }

    pub fn layout(&self) -> &CodeLayout {
        &self.layout
    }

    pub fn split(&self) -> &SplitGenerators {
        &self.split
    }

    pub fn audit(&self) -> &LocalityAudit {
        &self.audit
    }

    fn actor(&self, view: &PartyView, state: &StateVector, frame: &PauliString) -> Result<Actor> {
        let mut local = Vec::with_capacity(view.local_generators.len());
        for g in &view.local_generators {
            self.audit.check(&syndrome_circuit(g, self.layout.total_qubits())?)?;
            let (sign, _) = measure_syndrome_deterministic(state, g)?;
            local.push(sign);
        }
        let m_bit = local_commutation_bit(view, frame, &view.boundary_half)?;
        Ok(Actor { view: view.clone(), local, m_bit })
    }

    /// Rebuilds the canonical syndrome from a party's own bits and its peer's message.
    fn assemble(&self, me: &Actor, inbox: &ClassicalMessage) -> Result<Vec<Sign>> {
        let peer_local = inbox.local_bits();
        let peer_m = inbox.m_bit().ok_or_else(|| Error::Config("empty classical message".into()))?;
        let (alice_local, bob_local, m1, m2) = match me.view.party {
            Party::Alice => (&me.local[..], peer_local, me.m_bit, peer_m),
            Party::Bob => (peer_local, &me.local[..], peer_m, me.m_bit),
        };
        let mut split_syndrome: Vec<Sign> = alice_local.iter().chain(bob_local).copied().collect();
        split_syndrome.push(combine_boundary_syndrome(m1, m2));
        // every bit flip commutes with the logical X
        split_syndrome.push(Sign::Plus);
        Ok(self
            .basis_change
            .iter()
            .map(|&combo| {
                split_syndrome
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| combo >> i & 1 == 1)
                    .fold(Sign::Plus, |acc, (_, &s)| acc * s)
            })
            .collect())
    }

    fn local_x(&self, correction: &PauliString, view: &PartyView) -> Vec<Gate> {
        let part = correction.x_mask() & view.mask();
        (0..self.layout.total_qubits()).filter(|q| part >> q & 1 == 1).map(Gate::X).collect()
    }

    /// One run for the flip pattern `mask` under `channel`. `round` labels the
    /// transcript messages.
    pub fn run_pattern(
        &self,
        channel: ChannelKind,
        mask: u64,
        classical_channel: bool,
        round: usize,
    ) -> Result<ProtocolOutcome> {
        let n = self.layout.total_qubits();
        let frame = PauliString::bit_flip(n, mask);
        let state = match channel {
            ChannelKind::BitFlip => frame.apply(&self.encoded)?,
            ChannelKind::PhaseFlip => {
                let rotated = apply_circuit(&self.encoded, &self.sandwich)?;
                apply_circuit(&channel.error(n, mask).apply(&rotated)?, &self.sandwich)?
            }
        };
        self.finish(state, &frame, classical_channel, round)
    }

    pub fn run(&self, error: &PauliString, classical_channel: bool) -> Result<ProtocolOutcome> {
        if error.num_qubits() != self.layout.total_qubits() {
            return Err(Error::LengthMismatch { left: self.layout.total_qubits(), right: error.num_qubits() });
        }
        if !error.is_bit_flip() {
            return Err(Error::NotBitFlip(error.to_string()));
        }
        self.finish(error.apply(&self.encoded)?, error, classical_channel, 0)
    }

    fn finish(
        &self,
        mut state: StateVector,
        frame: &PauliString,
        classical_channel: bool,
        round: usize,
    ) -> Result<ProtocolOutcome> {
        let n = self.layout.total_qubits();
        let mut transcript = Vec::new();
        let mut alice_correction = PauliString::identity(n);
        let mut bob_correction = PauliString::identity(n);
        let mut assembled = None;

        if classical_channel {
            let alice = self.actor(&self.alice, &state, frame)?;
            let bob = self.actor(&self.bob, &state, frame)?;
            let mut queue: VecDeque<ClassicalMessage> = VecDeque::new();
            for a in [&alice, &bob] {
                let mut bits = a.local.clone();
                bits.push(a.m_bit);
                queue.push_back(ClassicalMessage { round, sender: a.view.party, bits });
            }
            let mut syndromes = Vec::new();
            while let Some(msg) = queue.pop_front() {
                let receiver = if msg.sender == Party::Alice { &bob } else { &alice };
                syndromes.push((receiver.view.party, self.assemble(receiver, &msg)?));
                transcript.push(msg);
            }
            let (_, first) = &syndromes[0];
            if syndromes.iter().any(|(_, s)| s != first) {
                return Err(Error::Config("parties assembled different syndromes".into()));
            }
            let correction = rotation_correct(&Syndrome::new(first.clone()), self.k)?;
            for (view, slot) in [(&self.alice, &mut alice_correction), (&self.bob, &mut bob_correction)] {
                let gates = self.local_x(&correction, view);
                self.audit.check(&gates)?;
                state = apply_circuit(&state, &gates)?;
                *slot = correction.restrict(view.mask());
            }
            assembled = Some(first.clone());
        }

        let decoded = apply_circuit(&state, &self.decoder)?;
        let fidelity = decoded.reduced_expectation(&self.layout.data_qubits(), &self.reference)?.sqrt();
        Ok(ProtocolOutcome { transcript, alice_correction, bob_correction, syndrome: assembled, fidelity })
    }
}

pub fn run_protocol(k: usize, error: &PauliString, classical_channel: bool) -> Result<ProtocolOutcome> {
    LongDistanceProtocol::new(k)?.run(error, classical_channel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_with_channel() {
        let out = run_protocol(1, &"XXIXII".parse().unwrap(), true).unwrap();
        assert!((out.fidelity - 1.0).abs() < 1e-12);
        assert_eq!(out.transcript.len(), 2);
        assert_eq!(out.transcript[0].sender, Party::Alice);
        assert_eq!(out.transcript[1].sender, Party::Bob);
        assert!(out.transcript.iter().all(|m| m.bits.len() == 3));
        let full = out.alice_correction.multiply(&out.bob_correction).unwrap();
        assert!(full.to_string() == "XXIXII" || full.to_string() == "IIXIXX");
        assert_eq!(out.syndrome.unwrap(), "+1 -1 +1 -1 -1 +1".parse::<Syndrome>().unwrap().signs());
    }

    #[test]
    fn without_channel_one_sided_failure() {
        let p = LongDistanceProtocol::new(1).unwrap();
        let out = p.run(&"XXIIII".parse().unwrap(), false).unwrap();
        assert!(out.transcript.is_empty());
        assert!(out.fidelity.abs() < 1e-12);
        let out = p.run(&"XXIIII".parse().unwrap(), true).unwrap();
        assert!((out.fidelity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn audit_rejects_cross_gate() {
        let layout = CodeLayout::new(1, LayoutKind::BipartiteBell).unwrap();
        let audit = LocalityAudit::for_layout(&layout);
        assert!(audit.check(&[Gate::cnot(0, 1), Gate::X(4)]).is_ok());
        assert!(matches!(audit.check(&[Gate::cnot(2, 3)]), Err(Error::NonLocalGate { .. })));
        assert!(audit.check(&[Gate::cnot(6, 3)]).is_ok());
    }

    #[test]
    fn phase_flip_patterns_corrected() {
        let p = LongDistanceProtocol::new(1).unwrap();
        for mask in 0..64 {
            let out = p.run_pattern(ChannelKind::PhaseFlip, mask, true, mask as usize).unwrap();
            assert!((out.fidelity - 1.0).abs() < 1e-12);
            assert!(out.transcript.iter().all(|m| m.round == mask as usize));
        }
    }
}
