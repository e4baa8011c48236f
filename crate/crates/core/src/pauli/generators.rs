use std::fmt;
use std::str::FromStr;

use super::{PauliString, Phase, Sign};
use crate::error::{Error, Result};

/// Ordered ±1 outcomes, one per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syndrome {
    signs: Vec<Sign>,
}

impl Syndrome {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self { signs }
    }

    pub fn trivial(len: usize) -> Self {
        Self { signs: vec![Sign::Plus; len] }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Bit `i` set when outcome `i` is -1.
    pub fn mask(&self) -> u64 {
        self.signs.iter().enumerate().filter(|(_, s)| s.is_minus()).map(|(i, _)| 1u64 << i).sum()
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.signs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Syndrome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| match tok.replace('−', "-").as_str() {
                "+1" | "1" => Ok(Sign::Plus),
                "-1" => Ok(Sign::Minus),
                _ => Err(Error::Config(format!("bad syndrome entry {tok:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Syndrome::new)
    }
}

/// Elimination row over GF(2): symplectic vector and the generator subset
/// whose product has those letters.
#[derive(Clone, Copy)]
struct Row {
    vec: u128,
    combo: u64,
}

fn symplectic(p: &PauliString) -> u128 {
    p.x_mask() as u128 | (p.z_mask() as u128) << 64
}

/// Stabilizer generators. Construction rejects non-Hermitian or
/// anticommuting sets and sets that generate `-I`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    num_qubits: usize,
    generators: Vec<PauliString>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<PauliString>) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::InvalidGenerators("empty".into()))?;
        let n = first.num_qubits();
        if generators.len() > 64 {
            return Err(Error::InvalidGenerators("at most 64 generators".into()));
        }
        for g in &generators {
            if g.num_qubits() != n {
                return Err(Error::LengthMismatch { left: n, right: g.num_qubits() });
            }
            if !g.is_hermitian() {
                return Err(Error::NonHermitian(g.to_string()));
            }
            let sq = g.multiply(g)?;
            if !sq.is_identity_letters() || sq.phase() != Phase::ONE {
                return Err(Error::InvalidGenerators(format!("{g} does not square to +I")));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if a.commutation(b)? == Sign::Minus {
                    return Err(Error::InvalidGenerators(format!("{a} and {b} anticommute")));
                }
            }
        }
        let set = Self { num_qubits: n, generators };
        for combo in set.reduce_basis().1 {
            let prod = set.product(combo);
            if prod.phase() != Phase::ONE {
                return Err(Error::InvalidGenerators(format!(
                    "generates {}I",
                    if prod.phase() == Phase::MINUS_ONE { "-" } else { "±i" }
                )));
            }
        }
        Ok(set)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Product of the generators selected by `combo`, multiplied in index order.
    pub fn product(&self, combo: u64) -> PauliString {
        self.generators
            .iter()
            .enumerate()
            .filter(|(i, _)| combo >> i & 1 == 1)
            .fold(PauliString::identity(self.num_qubits), |acc, (_, g)| acc.multiply(g).expect("same length"))
    }

    /// Reduced row-echelon basis plus the combinations that reduce to the
    /// identity letters (the dependencies among generators).
    fn reduce_basis(&self) -> (Vec<Row>, Vec<u64>) {
        let mut basis: Vec<Row> = Vec::new();
        let mut kernel = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let mut row = Row { vec: symplectic(g), combo: 1 << i };
            for b in &basis {
                let pivot = 1u128 << (127 - b.vec.leading_zeros());
                if row.vec & pivot != 0 {
                    row.vec ^= b.vec;
                    row.combo ^= b.combo;
                }
            }
            if row.vec == 0 {
                kernel.push(row.combo);
            } else {
                let pivot = 1u128 << (127 - row.vec.leading_zeros());
                for b in basis.iter_mut() {
                    if b.vec & pivot != 0 {
                        b.vec ^= row.vec;
                        b.combo ^= row.combo;
                    }
                }
                basis.push(row);
            }
        }
        (basis, kernel)
    }

    /// Number of independent generators.
    pub fn rank(&self) -> usize {
        self.reduce_basis().0.len()
    }

    /// Finds a subset of generators whose product equals `target` up to sign.
    /// Returns the subset (as a bitmask) and the sign `s` with `product = s · target`.
    pub fn decompose(&self, target: &PauliString) -> Result<Option<(u64, Sign)>> {
        if target.num_qubits() != self.num_qubits {
            return Err(Error::LengthMismatch { left: self.num_qubits, right: target.num_qubits() });
        }
        let (basis, _) = self.reduce_basis();
        let mut v = symplectic(target);
        let mut combo = 0u64;
        for b in &basis {
            let pivot = 1u128 << (127 - b.vec.leading_zeros());
            if v & pivot != 0 {
                v ^= b.vec;
                combo ^= b.combo;
            }
        }
        if v != 0 {
            return Ok(None);
        }
        let prod = self.product(combo);
        let ratio = prod.multiply(&target.letters_only())?.phase() * target.phase();
        // prod_phase · target_phase; equals prod_phase / target_phase when both are real
        let sign = match ratio {
            Phase::ONE => Sign::Plus,
            Phase::MINUS_ONE => Sign::Minus,
            _ => return Ok(None),
        };
        Ok(Some((combo, sign)))
    }

    /// True if both sets generate the same group (letters and signs).
    pub fn same_group(&self, other: &GeneratorSet) -> Result<bool> {
        for (a, b) in [(self, other), (other, self)] {
            for g in b.generators() {
                match a.decompose(g)? {
                    Some((_, Sign::Plus)) => {}
                    _ => return Ok(false),
                }
            }
        }
        Ok(true)
    }
}

/// `bits[i] = commutation(error, gens[i])`.
pub fn syndrome(error: &PauliString, gens: &GeneratorSet) -> Result<Syndrome> {
    gens.generators().iter().map(|g| error.commutation(g)).collect::<Result<Vec<_>>>().map(Syndrome::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_invalid_sets() {
        assert!(matches!(GeneratorSet::new(vec![p("XI"), p("ZI")]), Err(Error::InvalidGenerators(_))));
        assert!(matches!(GeneratorSet::new(vec![p("+iZZ")]), Err(Error::NonHermitian(_))));
        // ZZ, -ZZ generate -I
        assert!(GeneratorSet::new(vec![p("ZZ"), p("-ZZ")]).is_err());
        // XX, ZZ, -YY: product XX·ZZ = -YY, so XX·ZZ·(-YY) = +I, fine
        assert!(GeneratorSet::new(vec![p("XX"), p("ZZ"), p("-YY")]).is_ok());
        assert!(GeneratorSet::new(vec![p("XX"), p("ZZ"), p("YY")]).is_err());
    }

    #[test]
    fn decomposition_tracks_sign() {
        let g = GeneratorSet::new(vec![p("ZZI"), p("IZZ")]).unwrap();
        assert_eq!(g.decompose(&p("ZIZ")).unwrap(), Some((0b11, Sign::Plus)));
        assert_eq!(g.decompose(&p("-ZIZ")).unwrap(), Some((0b11, Sign::Minus)));
        assert_eq!(g.decompose(&p("ZII")).unwrap(), None);
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn syndrome_text() {
        let s: Syndrome = "+1 -1 +1".parse().unwrap();
        assert_eq!(s.to_string(), "+1 -1 +1");
        assert_eq!(s.mask(), 0b010);
    }
}
