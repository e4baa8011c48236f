use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::layout::CodeLayout;
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::quantum::{Gate, KrausChannel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    BitFlip,
    PhaseFlip,
}

impl ChannelKind {
    /// The error string this channel applies on the flipped qubits in `mask`.
    pub fn error(self, num_qubits: usize, mask: u64) -> PauliString {
        match self {
            ChannelKind::BitFlip => PauliString::bit_flip(num_qubits, mask),
            ChannelKind::PhaseFlip => PauliString::phase_flip(num_qubits, mask),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::BitFlip => "bitflip",
            ChannelKind::PhaseFlip => "phaseflip",
        })
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bitflip" | "bit-flip" => Ok(ChannelKind::BitFlip),
            "phaseflip" | "phase-flip" => Ok(ChannelKind::PhaseFlip),
            _ => Err(Error::Config(format!("unknown channel `{s}` (expected bitflip or phaseflip)"))),
        }
    }
}

/// Independent flips with probability `p` on each of `arity` qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelModel {
    pub kind: ChannelKind,
    pub p: f64,
    pub arity: usize,
}

impl ChannelModel {
    pub fn new(kind: ChannelKind, p: f64, arity: usize) -> Result<Self> {
        check_probability(p)?;
        Ok(Self { kind, p, arity })
    }

    /// Probability of the specific flip pattern `mask`.
    pub fn pattern_weight(&self, mask: u64) -> f64 {
        flip_weight(self.p, self.arity, mask.count_ones() as usize)
    }
}

pub fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// `p^w (1-p)^(n-w)` with `0^0 = 1`.
pub fn flip_weight(p: f64, n: usize, w: usize) -> f64 {
    p.powi(w as i32) * (1.0 - p).powi((n - w) as i32)
}

/// Tensor-power Pauli channel over all `2^arity` flip patterns; zero-weight terms are dropped.
pub fn make_channel(model: &ChannelModel) -> Result<KrausChannel> {
    check_probability(model.p)?;
    let terms = (0u64..1 << model.arity)
        .filter_map(|mask| {
            let w = model.pattern_weight(mask);
            (w > 0.0).then(|| (w, model.kind.error(model.arity, mask)))
        })
        .collect();
    KrausChannel::pauli_mixture(model.arity, terms)
}

/// One Hadamard layer over every code qubit; applied before and after a
/// phase-flip channel it turns `Z` errors into `X` errors.
pub fn phaseflip_sandwich(layout: &CodeLayout) -> Vec<Gate> {
    (0..layout.total_qubits()).map(Gate::H).collect()
}
