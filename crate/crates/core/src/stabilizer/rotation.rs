use crate::error::{Error, Result};
use crate::pauli::{PauliString, Syndrome};

/// Correction from a Bell-code syndrome. The syndrome is rotated right by
/// one and every `+1` position gets an `X`; the complement is used instead
/// when it is strictly lighter.
pub fn rotation_correct(s: &Syndrome, k: usize) -> Result<PauliString> {
    let total = 2 * (2 * k + 1);
    if s.len() != total {
        return Err(Error::SyndromeLength { expected: total, got: s.len() });
    }
    let signs = s.signs();
    if signs[total - 1].is_minus() {
        return Err(Error::NonBitFlipSyndrome);
    }
    let mask: u64 = (0..total).filter(|&j| !signs[(j + total - 1) % total].is_minus()).map(|j| 1u64 << j).sum();
    let all = (1u64 << total) - 1;
    let complement = all ^ mask;
    let chosen = if complement.count_ones() < mask.count_ones() { complement } else { mask };
    Ok(PauliString::bit_flip(total, chosen))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Syndrome {
        text.parse().unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(rotation_correct(&s("+1 -1 +1 -1 -1 +1"), 1).unwrap().to_string(), "XXIXII");
        assert_eq!(rotation_correct(&s("+1 +1 +1 -1 +1 +1"), 1).unwrap().to_string(), "IIIIXI");
        assert!(rotation_correct(&s("+1 +1 +1 +1 +1 +1"), 1).unwrap().is_identity_letters());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(rotation_correct(&s("+1 +1 +1 +1 +1 -1"), 1), Err(Error::NonBitFlipSyndrome)));
        assert!(matches!(rotation_correct(&s("+1 +1"), 1), Err(Error::SyndromeLength { .. })));
    }
}
