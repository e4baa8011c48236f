//! Repetition-code protection of Bell pairs.
//!
//! The crate simulates `(2k+1, 1)` repetition-code encoding of `|φ+⟩` under
//! bit-flip and phase-flip channels. Decoding strategies:
//!
//! - independent per-party repetition decoding;
//! - full stabilizer-syndrome decoding when a controlled gate can reach both halves;
//! - a long-distance protocol that rebuilds the one nonlocal syndrome from two
//!   local commutation bits sent over a classical channel.
//!
//! Modules:
//!
//! - [`quantum`]: dense statevector and density-matrix simulator.
//! - [`pauli`]: exact Pauli-string algebra and syndromes.
//! - [`repetition`]: encoder/decoder circuits, channel models and closed forms.
//! - [`stabilizer`]: syndrome tables and the short-distance pipeline.
//! - [`longdistance`]: two-party protocol with and without classical messages.
//! - [`experiment`]: enumeration, Monte Carlo, sweeps and the verify battery.

pub mod error;
pub mod exec;
pub mod experiment;
pub mod longdistance;
pub mod pauli;
pub mod quantum;
pub mod repetition;
pub mod stabilizer;

pub use error::{Error, Result};
pub use exec::ExecPolicy;
