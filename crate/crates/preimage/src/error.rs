//! Structural error types shared by the circuit IR, simulator, and counters.

use thiserror::Error;

/// Violations of circuit well-formedness or of an operation's preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate operand {operand} out of range for circuit width {width}")]
    OperandOutOfRange { operand: u32, width: u32 },

    #[error("gate operands must be pairwise distinct (got {0:?})")]
    DuplicateOperands([u32; 3]),

    #[error("circuit widths differ: {left} vs {right}")]
    WidthMismatch { left: u32, right: u32 },

    #[error("registers must be non-overlapping and cover wires 0..{width}")]
    BadRegisters { width: u32 },

    #[error("gate {0} is not classically simulable (only X, CNOT, Toffoli are)")]
    NonClassicalGate(&'static str),

    #[error("bit state length {state} does not match circuit width {width}")]
    StateWidthMismatch { state: usize, width: u32 },
}
