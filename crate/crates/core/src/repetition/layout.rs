use std::fmt;

use crate::error::{Error, Result};
use crate::quantum::MAX_QUBITS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayoutKind {
    /// One logical qubit in one block.
    Single,
    /// `|φ+⟩` shared between Alice and Bob, each half encoded in its own block.
    BipartiteBell,
    /// `|00⟩` (the worst-case product input), encoded per party.
    BipartiteProduct,
}

impl LayoutKind {
    pub fn is_bipartite(self) -> bool {
        !matches!(self, LayoutKind::Single)
    }
}

/// One repetition block: a data qubit and its `2k` ancillas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub data: usize,
    pub ancillas: Vec<usize>,
}

impl Block {
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.data).chain(self.ancillas.iter().copied())
    }

    pub fn mask(&self) -> u64 {
        self.qubits().map(|q| 1u64 << q).sum()
    }
}

/// Qubit numbering for a `(2k+1, 1)` code. Block `b` occupies qubits
/// `b(2k+1) .. (b+1)(2k+1)` with its data qubit first; for bipartite layouts
/// block 0 is Alice (one-based qubits `1..2k+1`) and block 1 is Bob.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeLayout {
    k: usize,
    kind: LayoutKind,
}

impl CodeLayout {
    pub fn new(k: usize, kind: LayoutKind) -> Result<Self> {
        let layout = Self { k, kind };
        let max_k = if kind.is_bipartite() { (MAX_QUBITS / 2 - 1) / 2 } else { (MAX_QUBITS - 1) / 2 };
        if k < 1 || k > max_k {
            return Err(Error::UnsupportedOrder { k, min: 1, max: max_k });
        }
        Ok(layout)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> LayoutKind {
        self.kind
    }

    pub fn block_size(&self) -> usize {
        2 * self.k + 1
    }

    pub fn num_blocks(&self) -> usize {
        if self.kind.is_bipartite() {
            2
        } else {
            1
        }
    }

    pub fn total_qubits(&self) -> usize {
        self.block_size() * self.num_blocks()
    }

    pub fn all_mask(&self) -> u64 {
        (1u64 << self.total_qubits()) - 1
    }

    pub fn blocks(&self) -> Vec<Block> {
        let n = self.block_size();
        (0..self.num_blocks()).map(|b| Block { data: b * n, ancillas: (b * n + 1..(b + 1) * n).collect() }).collect()
    }

    pub fn data_qubits(&self) -> Vec<usize> {
        self.blocks().iter().map(|b| b.data).collect()
    }

    pub fn alice_mask(&self) -> u64 {
        self.blocks()[0].mask()
    }

    /// Bob's qubits; empty for the single-block layout.
    pub fn bob_mask(&self) -> u64 {
        self.blocks().get(1).map_or(0, Block::mask)
    }
}

impl fmt::Display for CodeLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, 1) code, k = {}, {:?}, {} qubits", self.block_size(), self.k, self.kind, self.total_qubits())
    }
}
