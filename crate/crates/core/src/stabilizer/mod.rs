//! Stabilizer decoding of the encoded Bell pair: generator sets, exhaustive
//! syndrome tables, the rotation correction rule and the short-distance
//! pipeline in which every syndrome can be measured.

mod generators;
mod pipeline;
mod rotation;
mod table;

pub use generators::{
    bell_code_generators, distinct_bit_flip_syndromes, per_side_correctable_count, product_code_generators,
};
pub use pipeline::{
    phase_flip_transparency_check, short_distance_pipeline, ShortDistanceOutcome, ShortDistancePipeline,
};
pub use rotation::rotation_correct;
pub use table::{
    build_syndrome_table, build_syndrome_table_with, compare_with_golden, parse_golden, GoldenReport, GoldenRow,
    SyndromeClass, SyndromeTable, TableRecord, BELL_K1_GOLDEN_CSV, MAX_TABLE_K,
};

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
