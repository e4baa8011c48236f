//! `(2k+1, 1)` repetition code: layouts, encoder and decoder circuits,
//! flip channels, the per-pattern simulation pipeline and closed-form
//! fidelities.

mod circuits;
mod closed_form;
mod layout;
mod noise;
mod pipeline;

pub use circuits::{build_decoder, build_encoder, correction_gates, embed_input, encode, majority_decode};
pub use closed_form::{
    binomial, bipartite_coefficients, closed_form_bipartite_fidelity, closed_form_bipartite_fidelity_with,
    closed_form_single_fidelity, min_over_bloch_grid, min_over_product_grid, unencoded_min_fidelity,
    unencoded_readings, unencoded_single_min_fidelity, weight_polynomial, BipartiteFidelity, BipartiteKind,
    CoefficientRule, SingleFidelity, UnencodedKind, UnencodedReadings, MAX_CLOSED_FORM_K,
};
pub use layout::{Block, CodeLayout, LayoutKind};
pub use noise::{check_probability, flip_weight, make_channel, phaseflip_sandwich, ChannelKind, ChannelModel};
pub use pipeline::{default_input, RepetitionPipeline};
