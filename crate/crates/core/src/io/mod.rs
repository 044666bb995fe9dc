//! Circuit and Hamiltonian interchange formats.

mod float;
pub mod hamiltonian;
pub mod qasm;

pub use float::format_g17;
pub use hamiltonian::{emit_hamiltonian, parse_hamiltonian, Hamiltonian, Pauli, PauliTerm};
pub use qasm::{emit_qasm, parse_qasm, parse_qasm_with_report, ParsedQasm};
