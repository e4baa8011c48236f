//! Exact Pauli-string algebra on bit-packed `(x, z)` masks.
//!
//! A string on `n ≤ 64` qubits is `i^phase · P_1 ⊗ … ⊗ P_n` where the letter
//! on qubit `q` is read from bit `q` of the masks: `(0,0)=I`, `(1,0)=X`,
//! `(0,1)=Z`, `(1,1)=Y`. Text form lists qubit 0 first.

mod generators;
mod measure;

pub use generators::{syndrome, GeneratorSet, Syndrome};
pub use measure::{measure_syndrome_circuit, measure_syndrome_deterministic, syndrome_circuit};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quantum::StateVector;

pub const MAX_PAULI_QUBITS: usize = 64;

/// A ±1 outcome: commutation sign, stabilizer eigenvalue or syndrome bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("expected +1 or -1, got {v}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Global phase `i^k`, `k` mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Self {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn conj(self) -> Self {
        Phase((4 - self.0) % 4)
    }

    pub fn to_complex(self) -> C64 {
        [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)][self.0 as usize]
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Z => (false, true),
            Letter::Y => (true, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (false, true) => Letter::Z,
            (true, true) => Letter::Y,
        }
    }

    fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    num_qubits: usize,
    x: u64,
    z: u64,
    phase: Phase,
}

fn low_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn identity(num_qubits: usize) -> Self {
        assert!(num_qubits <= MAX_PAULI_QUBITS, "at most {MAX_PAULI_QUBITS} qubits");
        Self { num_qubits, x: 0, z: 0, phase: Phase::ONE }
    }

    /// Builds from masks; bits above `num_qubits` are rejected.
    pub fn from_masks(num_qubits: usize, x: u64, z: u64, phase: Phase) -> Result<Self> {
        if num_qubits > MAX_PAULI_QUBITS || (x | z) & !low_mask(num_qubits) != 0 {
            return Err(Error::ParsePauli {
                input: format!("x={x:#x} z={z:#x}"),
                reason: format!("masks do not fit {num_qubits} qubits"),
            });
        }
        Ok(Self { num_qubits, x, z, phase })
    }

    /// X on every qubit set in `mask`.
    pub fn bit_flip(num_qubits: usize, mask: u64) -> Self {
        Self::from_masks(num_qubits, mask, 0, Phase::ONE).expect("bit-flip mask out of range")
    }

    /// Z on every qubit set in `mask`.
    pub fn phase_flip(num_qubits: usize, mask: u64) -> Self {
        Self::from_masks(num_qubits, 0, mask, Phase::ONE).expect("phase-flip mask out of range")
    }

    /// A single letter on `qubit`.
    pub fn single(num_qubits: usize, qubit: usize, letter: Letter) -> Self {
        assert!(qubit < num_qubits);
        let (x, z) = letter.bits();
        Self { num_qubits, x: (x as u64) << qubit, z: (z as u64) << qubit, phase: Phase::ONE }
    }

    /// `Z_a Z_b` (0-based qubits).
    pub fn zz(num_qubits: usize, a: usize, b: usize) -> Self {
        Self::phase_flip(num_qubits, (1 << a) | (1 << b))
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        self.support_mask().count_ones()
    }

    pub fn is_identity_letters(&self) -> bool {
        self.support_mask() == 0
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    pub fn is_bit_flip(&self) -> bool {
        self.z == 0
    }

    /// Same letters, phase reset to +1.
    pub fn letters_only(&self) -> Self {
        self.with_phase(Phase::ONE)
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::LengthMismatch { left: self.num_qubits, right: other.num_qubits });
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let (x1, z1, x2, z2) = (self.x, self.z, other.x, other.z);
        let x = x1 ^ x2;
        let z = z1 ^ z2;
        let k = self.phase.0 as i64
            + other.phase.0 as i64
            + (x1 & z1).count_ones() as i64
            + (x2 & z2).count_ones() as i64
            + 2 * (z1 & x2).count_ones() as i64
            - (x & z).count_ones() as i64;
        Ok(Self { num_qubits: self.num_qubits, x, z, phase: Phase::from_exponent(k) })
    }

    /// `+1` if the strings commute, `-1` if they anticommute (symplectic form).
    pub fn commutation(&self, other: &Self) -> Result<Sign> {
        self.check_len(other)?;
        let odd = ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 1;
        Ok(Sign::from_parity(odd))
    }

    /// Keeps only the letters on qubits in `mask`.
    pub fn restrict(&self, mask: u64) -> Self {
        Self { num_qubits: self.num_qubits, x: self.x & mask, z: self.z & mask, phase: self.phase }
    }

    /// Re-labels qubit `j` as `targets[j]` inside an `n`-qubit register.
    pub fn embed(&self, targets: &[usize], num_qubits: usize) -> Result<Self> {
        if targets.len() != self.num_qubits {
            return Err(Error::LengthMismatch { left: self.num_qubits, right: targets.len() });
        }
        crate::quantum::check_indices(targets, num_qubits)?;
        let (mut x, mut z) = (0u64, 0u64);
        for (j, &t) in targets.iter().enumerate() {
            x |= (self.x >> j & 1) << t;
            z |= (self.z >> j & 1) << t;
        }
        Self::from_masks(num_qubits, x, z, self.phase)
    }

    /// Coefficient in front of `X^x Z^z` (Z applied first).
    pub(crate) fn xz_coefficient(&self) -> C64 {
        Phase::from_exponent(self.phase.0 as i64 + (self.x & self.z).count_ones() as i64).to_complex()
    }

    /// `P|ψ⟩` on a register of the same size.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch { expected: self.num_qubits, got: state.num_qubits() });
        }
        let mut out = state.clone();
        crate::quantum::kernel::apply_xz(out.amplitudes_mut(), self.x as usize, self.z as usize, self.xz_coefficient());
        Ok(out)
    }

    /// Dense matrix (row-major), for cross-checks on small registers.
    pub fn matrix(&self) -> Vec<C64> {
        let dim = 1usize << self.num_qubits;
        let coeff = self.xz_coefficient();
        let mut m = vec![C64::new(0.0, 0.0); dim * dim];
        for b in 0..dim {
            let sign = if (b as u64 & self.z).count_ones() % 2 == 1 { -coeff } else { coeff };
            m[(b ^ self.x as usize) * dim + b] = sign;
        }
        m
    }
}

/// `e1 ~ e2` when they differ by identity or by the all-X string, i.e. they act
/// identically on the repetition-encoded `|φ+⟩`.
pub fn equivalent_mod_logical_x(e1: &PauliString, e2: &PauliString, num_qubits: usize) -> Result<bool> {
    for e in [e1, e2] {
        if !e.is_bit_flip() {
            return Err(Error::NotBitFlip(e.to_string()));
        }
        if e.num_qubits != num_qubits {
            return Err(Error::LengthMismatch { left: e.num_qubits, right: num_qubits });
        }
    }
    let diff = e1.x ^ e2.x;
    Ok(diff == 0 || diff == low_mask(num_qubits))
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.phase.0 {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })?;
        (0..self.num_qubits).try_for_each(|q| write!(f, "{}", self.letter(q).as_char()))
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::ParsePauli { input: s.to_string(), reason: reason.to_string() };
        let t = s.trim().replace('−', "-");
        let (phase, body) = if let Some(rest) = t.strip_prefix("-i") {
            (Phase::MINUS_I, rest)
        } else if let Some(rest) = t.strip_prefix("+i") {
            (Phase::I, rest)
        } else if let Some(rest) = t.strip_prefix('i') {
            (Phase::I, rest)
        } else if let Some(rest) = t.strip_prefix('-') {
            (Phase::MINUS_ONE, rest)
        } else if let Some(rest) = t.strip_prefix('+') {
            (Phase::ONE, rest)
        } else {
            (Phase::ONE, t.as_str())
        };
        let letters: Vec<char> = body.chars().filter(|c| !c.is_whitespace()).collect();
        if letters.is_empty() {
            return Err(err("no letters"));
        }
        if letters.len() > MAX_PAULI_QUBITS {
            return Err(err("too many qubits"));
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (q, c) in letters.iter().enumerate() {
            let letter = match c.to_ascii_uppercase() {
                'I' => Letter::I,
                'X' => Letter::X,
                'Y' => Letter::Y,
                'Z' => Letter::Z,
                _ => return Err(err("letters must be I, X, Y or Z")),
            };
            let (bx, bz) = letter.bits();
            x |= (bx as u64) << q;
            z |= (bz as u64) << q;
        }
        Ok(Self { num_qubits: letters.len(), x, z, phase })
    }
}
