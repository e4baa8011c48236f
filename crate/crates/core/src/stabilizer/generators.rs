use crate::error::{Error, Result};
use crate::pauli::{GeneratorSet, PauliString};
use crate::repetition::{CodeLayout, LayoutKind};

fn bipartite_qubits(k: usize) -> Result<usize> {
    Ok(CodeLayout::new(k, LayoutKind::BipartiteBell)?.total_qubits())
}

/// `Z1Z2, Z1Z3, …, Z1Z_{2n}, X^{⊗2n}` for the encoded Bell pair, `n = 2k+1`.
pub fn bell_code_generators(k: usize) -> Result<GeneratorSet> {
    let total = bipartite_qubits(k)?;
    let mut gens: Vec<PauliString> = (1..total).map(|q| PauliString::zz(total, 0, q)).collect();
    gens.push(PauliString::bit_flip(total, (1u64 << total) - 1));
    GeneratorSet::new(gens)
}

/// Per-block stars `Z1Z2..Z1Z_n` and `Z_{n+1}Z_{n+2}..Z_{n+1}Z_{2n}`: every
/// generator is local to one party.
pub fn product_code_generators(k: usize) -> Result<GeneratorSet> {
    let total = bipartite_qubits(k)?;
    let n = total / 2;
    let gens =
        [0, n].iter().flat_map(|&root| (root + 1..root + n).map(move |q| PauliString::zz(total, root, q))).collect();
    GeneratorSet::new(gens)
}

/// Number of distinct syndromes over all bit-flip patterns on the set's qubits.
pub fn distinct_bit_flip_syndromes(gens: &GeneratorSet) -> Result<usize> {
    let n = gens.num_qubits();
    if n > 20 {
        return Err(Error::TooManyQubits { num_qubits: n, cap: 20 });
    }
    let mut seen = std::collections::HashSet::new();
    for mask in 0u64..1 << n {
        seen.insert(crate::pauli::syndrome(&PauliString::bit_flip(n, mask), gens)?.mask());
    }
    Ok(seen.len())
}

/// Bit-flip patterns with at most `k` flips in each block.
pub fn per_side_correctable_count(k: usize) -> Result<usize> {
    let layout = CodeLayout::new(k, LayoutKind::BipartiteProduct)?;
    let (a, b) = (layout.alice_mask(), layout.bob_mask());
    Ok((0u64..1 << layout.total_qubits())
        .filter(|m| (m & a).count_ones() as usize <= k && (m & b).count_ones() as usize <= k)
        .count())
}
