use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliString, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn peer(self) -> Party {
        match self {
            Party::Alice => Party::Bob,
            Party::Bob => Party::Alice,
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Party::Alice => "alice",
            Party::Bob => "bob",
        })
    }
}

/// One classical message: the sender's local syndrome bits followed by its
/// boundary commutation bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalMessage {
    pub round: usize,
    pub sender: Party,
    pub bits: Vec<Sign>,
}

impl ClassicalMessage {
    /// Local syndrome part of the payload.
    pub fn local_bits(&self) -> &[Sign] {
        &self.bits[..self.bits.len().saturating_sub(1)]
    }

    /// The trailing boundary commutation bit.
    pub fn m_bit(&self) -> Option<Sign> {
        self.bits.last().copied()
    }
}

/// One party's qubits and local generators, with its factor of the
/// boundary generator and the messages received so far.
#[derive(Debug, Clone, PartialEq)]
pub struct PartyView {
    pub party: Party,
    pub qubits: Vec<usize>,
    pub local_generators: Vec<PauliString>,
    pub boundary_half: PauliString,
    pub received: Vec<ClassicalMessage>,
}

impl PartyView {
    pub fn new(
        party: Party,
        qubits: Vec<usize>,
        local_generators: Vec<PauliString>,
        boundary_half: PauliString,
    ) -> Result<Self> {
        let view = Self { party, qubits, local_generators, boundary_half, received: Vec::new() };
        let mask = view.mask();
        for g in view.local_generators.iter().chain(std::iter::once(&view.boundary_half)) {
            if g.support_mask() & !mask != 0 {
                return Err(Error::InvalidPartition(format!("{g} acts outside {party}'s qubits")));
            }
        }
        Ok(view)
    }

    pub fn mask(&self) -> u64 {
        self.qubits.iter().map(|q| 1u64 << q).sum()
    }

    pub fn owns_all(&self, qubits: &[usize]) -> bool {
        let m = self.mask();
        qubits.iter().all(|q| m >> q & 1 == 1)
    }
}

/// Writes one JSON object per line.
pub fn write_transcript_jsonl<W: Write>(messages: &[ClassicalMessage], mut out: W) -> Result<()> {
    for m in messages {
        serde_json::to_writer(&mut out, m)?;
        out.write_all(b"\n").map_err(|source| Error::Io { path: "<transcript>".into(), source })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn message_json_shape() {
        let m = ClassicalMessage { round: 3, sender: Party::Bob, bits: vec![Sign::Plus, Sign::Minus, Sign::Minus] };
        let mut buf = Vec::new();
        write_transcript_jsonl(std::slice::from_ref(&m), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "{\"round\":3,\"sender\":\"bob\",\"bits\":[1,-1,-1]}\n");
        assert_eq!(m.local_bits(), &[Sign::Plus, Sign::Minus]);
        assert_eq!(m.m_bit(), Some(Sign::Minus));
        let back: ClassicalMessage = serde_json::from_str("{\"round\":0,\"sender\":\"alice\",\"bits\":[1]}").unwrap();
        assert_eq!(back.sender, Party::Alice);
        assert!(serde_json::from_str::<ClassicalMessage>("{\"round\":0,\"sender\":\"alice\",\"bits\":[0]}").is_err());
    }

    #[test]
    fn view_rejects_foreign_generator() {
        let z = PauliString::single(6, 2, crate::pauli::Letter::Z);
        assert!(PartyView::new(Party::Alice, vec![0, 1, 2], vec![PauliString::zz(6, 0, 3)], z).is_err());
    }
}
