//! Experiment harness: exhaustive enumeration over flip patterns or seeded
//! Monte Carlo, swept over p with CSV/JSON/gnuplot output. Also hosts the
//! verification battery behind `bellqec verify`.

mod config;
mod exact;
mod model;
mod montecarlo;
mod row;
mod sweep;
mod verify;

pub use config::{parse_list, parse_p_range, round_p, ExperimentConfig, Method, Scenario, MAX_EXACT_QUBITS};
pub use exact::{enumerate_exact, overlap_table, weight_profile, WeightProfile};
pub use model::PatternModel;
pub use montecarlo::{estimate, monte_carlo, sample_pattern, stream_id, McEstimate, MC_CHUNK};
pub use row::{write_gnuplot, write_rows, OutputFormat, ResultRow, CSV_HEADER};
pub use sweep::{collect_traces, run_experiment, sweep};
pub use verify::{verify, CheckResult, VerifyOptions, VerifyReport, CHECK_IDS};
