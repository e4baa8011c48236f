use super::config::Scenario;
use crate::error::Result;
use crate::longdistance::LongDistanceProtocol;
use crate::quantum::{prepare_bell, StateVector};
use crate::repetition::{ChannelKind, CodeLayout, LayoutKind, RepetitionPipeline};
use crate::stabilizer::ShortDistancePipeline;

#[allow(clippy::large_enum_variant)]
enum Engine {
    Unencoded(StateVector),
    Repetition(RepetitionPipeline),
    Short(ShortDistancePipeline),
    LongDistance { protocol: LongDistanceProtocol, classical: bool },
}

/// A scenario reduced to "squared overlap of the delivered state with the
/// target, given the flip pattern".
pub struct PatternModel {
    scenario: Scenario,
    k: usize,
    channel: ChannelKind,
    num_qubits: usize,
    engine: Engine,
}

impl PatternModel {
    pub fn new(scenario: Scenario, k: usize, channel: ChannelKind) -> Result<Self> {
        let rep = |kind| -> Result<Engine> {
            Ok(Engine::Repetition(RepetitionPipeline::with_default_input(CodeLayout::new(k, kind)?, channel)?))
        };
        let engine = match scenario {
            Scenario::Unencoded => Engine::Unencoded(prepare_bell(false, false)),
            Scenario::QrcSingle => rep(LayoutKind::Single)?,
            Scenario::QrcBipartiteBell => rep(LayoutKind::BipartiteBell)?,
            Scenario::QrcBipartiteProduct => rep(LayoutKind::BipartiteProduct)?,
            Scenario::StabilizerShort => Engine::Short(ShortDistancePipeline::new(k)?),
            Scenario::LongdistanceCc => {
                Engine::LongDistance { protocol: LongDistanceProtocol::new(k)?, classical: true }
            }
            Scenario::LongdistanceNocc => {
                Engine::LongDistance { protocol: LongDistanceProtocol::new(k)?, classical: false }
            }
        };
        Ok(Self { scenario, k, channel, num_qubits: scenario.channel_qubits(k), engine })
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn channel(&self) -> ChannelKind {
        self.channel
    }

    /// Qubits the channel acts on; patterns are masks over these.
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn overlap(&self, mask: u64) -> Result<f64> {
        match &self.engine {
            Engine::Unencoded(bell) => {
                let after = self.channel.error(2, mask).apply(bell)?;
                Ok(after.overlap(bell)?.powi(2))
            }
            Engine::Repetition(pipe) => pipe.pattern_overlap(mask),
            Engine::Short(pipe) => Ok(pipe.run_pattern(self.channel, mask)?.fidelity.powi(2)),
            Engine::LongDistance { protocol, classical } => {
                Ok(protocol.run_pattern(self.channel, mask, *classical, 0)?.fidelity.powi(2))
            }
        }
    }

    /// The protocol engine, for transcript export.
    pub fn protocol(&self) -> Option<(&LongDistanceProtocol, bool)> {
        match &self.engine {
            Engine::LongDistance { protocol, classical } => Some((protocol, *classical)),
            _ => None,
        }
    }
}
