//! Alice and Bob each hold one encoded half of the pair. They can measure
//! their own generators; the boundary generator spans both halves, so its
//! syndrome is rebuilt from one commutation bit per party exchanged over a
//! classical channel.

mod algebra;
mod party;
mod protocol;

pub use algebra::{
    combine_boundary_syndrome, commutator_prefactor, local_commutation_bit, observable_commutator, split_generators,
    ObservableCommutator, SplitGenerators,
};
pub use party::{write_transcript_jsonl, ClassicalMessage, Party, PartyView};
pub use protocol::{run_protocol, LocalityAudit, LongDistanceProtocol, ProtocolOutcome};
