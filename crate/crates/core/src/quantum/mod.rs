//! Dense statevector and density-matrix simulation.

mod bell;
mod channel;
mod gate;
mod info;
pub(crate) mod kernel;
mod state;

pub use bell::{bell_transform, prepare_bell, BellState};
pub use channel::{apply_channel, KrausChannel, KrausOperator};
pub use gate::{
    apply_circuit, apply_gate, check_unitary, gate_matrix, Control, Evolve, Gate, Matrix2, HADAMARD, PAULI_X, PAULI_Y,
    PAULI_Z,
};
pub use info::{binary_entropy, fidelity, mutual_information, von_neumann_entropy, EntropyReport};
pub(crate) use state::check_indices;
pub use state::{DensityMatrix, StateVector, MAX_DENSITY_QUBITS, MAX_QUBITS};
