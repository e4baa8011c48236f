use serde::Serialize;

use super::party::{Party, PartyView};
use crate::error::{Error, Result};
use crate::pauli::{GeneratorSet, Letter, PauliString, Sign};
use crate::repetition::{CodeLayout, LayoutKind};

/// Locality-respecting basis of the encoded Bell stabilizer: Alice's star
/// from her first qubit, Bob's chain from his first qubit, the boundary
/// `Z_n Z_{n+1}` and the logical `X^{⊗2n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitGenerators {
    pub alice: Vec<PauliString>,
    pub bob: Vec<PauliString>,
    pub boundary: PauliString,
    pub logical_x: PauliString,
}

impl SplitGenerators {
    /// Alice's, then Bob's, then boundary, then logical X.
    pub fn ordered(&self) -> Vec<PauliString> {
        let mut v = self.alice.clone();
        v.extend(self.bob.iter().copied());
        v.push(self.boundary);
        v.push(self.logical_x);
        v
    }

    pub fn generator_set(&self) -> Result<GeneratorSet> {
        GeneratorSet::new(self.ordered())
    }

    /// The single-qubit factor of the boundary generator held by `party`.
    pub fn boundary_half(&self, party: Party) -> PauliString {
        let n = self.boundary.num_qubits();
        let q = (0..n).filter(|&q| self.boundary.letter(q) != Letter::I);
        let qubits: Vec<usize> = q.collect();
        let idx = match party {
            Party::Alice => qubits[0],
            Party::Bob => qubits[1],
        };
        PauliString::single(n, idx, Letter::Z)
    }

    pub fn view(&self, layout: &CodeLayout, party: Party) -> Result<PartyView> {
        let blocks = layout.blocks();
        let (block, gens) = match party {
            Party::Alice => (&blocks[0], &self.alice),
            Party::Bob => (&blocks[1], &self.bob),
        };
        PartyView::new(party, block.qubits().collect(), gens.clone(), self.boundary_half(party))
    }
}

pub fn split_generators(k: usize) -> Result<SplitGenerators> {
    let layout = CodeLayout::new(k, LayoutKind::BipartiteBell)?;
    let total = layout.total_qubits();
    let n = layout.block_size();
    Ok(SplitGenerators {
        alice: (1..n).map(|q| PauliString::zz(total, 0, q)).collect(),
        bob: (n..2 * n - 1).map(|q| PauliString::zz(total, q, q + 1)).collect(),
        boundary: PauliString::zz(total, n - 1, n),
        logical_x: PauliString::bit_flip(total, (1u64 << total) - 1),
    })
}

/// Whether the party's share of `error` commutes with `boundary_half`.
pub fn local_commutation_bit(view: &PartyView, error: &PauliString, boundary_half: &PauliString) -> Result<Sign> {
    if boundary_half.support_mask() & !view.mask() != 0 {
        return Err(Error::InvalidPartition(format!("{boundary_half} is not held by {}", view.party)));
    }
    error.restrict(view.mask()).commutation(boundary_half)
}

/// Syndrome of the boundary generator from the two local bits.
pub fn combine_boundary_syndrome(m1: Sign, m2: Sign) -> Sign {
    m1 * m2
}

/// `(1 + m1)(1 + m2)(m2 - m1)`, the scalar multiplying `Z_a Z_b` in the
/// commutator of the two local observables.
pub fn commutator_prefactor(m1: Sign, m2: Sign) -> i64 {
    let (a, b) = (m1.value() as i64, m2.value() as i64);
    (1 + a) * (1 + b) * (b - a)
}

/// The commutator `[O1, O2]` with `O1 = (1 + m1) Z_a E`, `O2 = (1 + m2) Z_b E`,
/// computed by exact Pauli multiplication. Returns the integer coefficient
/// of `Z_a Z_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ObservableCommutator {
    pub m1: i8,
    pub m2: i8,
    pub coefficient: i64,
    pub prefactor: i64,
}

pub fn observable_commutator(error: &PauliString, split: &SplitGenerators) -> Result<ObservableCommutator> {
    let za = split.boundary_half(Party::Alice);
    let zb = split.boundary_half(Party::Bob);
    let m1 = error.commutation(&za)?;
    let m2 = error.commutation(&zb)?;
    let a = za.multiply(error)?;
    let b = zb.multiply(error)?;
    let boundary = za.multiply(&zb)?;
    let ab = a.multiply(&b)?;
    let ba = b.multiply(&a)?;
    let coeff_of = |p: &PauliString| -> Result<i64> {
        if p.x_mask() != boundary.x_mask() || p.z_mask() != boundary.z_mask() {
            return Err(Error::InvalidGenerators(format!("{p} is not a multiple of {boundary}")));
        }
        match (p.phase() * boundary.phase().conj()).exponent() {
            0 => Ok(1),
            2 => Ok(-1),
            _ => Err(Error::NonHermitian(p.to_string())),
        }
    };
    let scale = (1 + m1.value() as i64) * (1 + m2.value() as i64);
    let coefficient = scale * (coeff_of(&ab)? - coeff_of(&ba)?);
    Ok(ObservableCommutator { m1: m1.value(), m2: m2.value(), coefficient, prefactor: commutator_prefactor(m1, m2) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_split() {
        let s = split_generators(1).unwrap();
        let names: Vec<String> = s.ordered().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["ZZIIII", "ZIZIII", "IIIZZI", "IIIIZZ", "IIZZII", "XXXXXX"]);
        assert_eq!(s.boundary_half(Party::Alice).to_string(), "IIZIII");
        assert_eq!(s.boundary_half(Party::Bob).to_string(), "IIIZII");
    }

    #[test]
    fn commutation_bits() {
        let s = split_generators(1).unwrap();
        let layout = CodeLayout::new(1, LayoutKind::BipartiteBell).unwrap();
        let alice = s.view(&layout, Party::Alice).unwrap();
        let bob = s.view(&layout, Party::Bob).unwrap();
        let x3: PauliString = "IIXIII".parse().unwrap();
        let m1 = local_commutation_bit(&alice, &x3, &alice.boundary_half).unwrap();
        let m2 = local_commutation_bit(&bob, &x3, &bob.boundary_half).unwrap();
        assert_eq!((m1, m2), (Sign::Minus, Sign::Plus));
        assert_eq!(combine_boundary_syndrome(m1, m2), Sign::Minus);
        assert_eq!(x3.commutation(&s.boundary).unwrap(), Sign::Minus);
        let x4: PauliString = "IIIXII".parse().unwrap();
        assert_eq!(local_commutation_bit(&bob, &x4, &bob.boundary_half).unwrap(), Sign::Minus);
        assert_eq!(local_commutation_bit(&alice, &PauliString::identity(6), &alice.boundary_half).unwrap(), Sign::Plus);
        assert!(local_commutation_bit(&alice, &x4, &bob.boundary_half).is_err());
    }

    #[test]
    fn combine_table() {
        assert_eq!(combine_boundary_syndrome(Sign::Minus, Sign::Minus), Sign::Plus);
        assert_eq!(combine_boundary_syndrome(Sign::Minus, Sign::Plus), Sign::Minus);
    }

    #[test]
    fn prefactor_vanishes() {
        for m1 in [Sign::Plus, Sign::Minus] {
            for m2 in [Sign::Plus, Sign::Minus] {
                assert_eq!(commutator_prefactor(m1, m2), 0);
            }
        }
    }
}
