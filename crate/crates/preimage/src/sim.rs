//! Classical bit-level execution of X/CNOT/Toffoli circuits.
//!
//! Used to verify hash circuits against software reference implementations.
//! H/T/P/Z gates have no classical action on basis states and are rejected.

use crate::circuit::{Circuit, Gate};
use crate::error::CircuitError;

/// A width-length assignment of classical bits, packed into machine words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitState {
    words: Vec<u64>,
    len: usize,
}

impl BitState {
    pub fn zeros(len: usize) -> Self {
        BitState {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: u32) -> bool {
        let i = i as usize;
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 != 0
    }

    #[inline]
    pub fn set(&mut self, i: u32, v: bool) {
        let i = i as usize;
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: u32) {
        let i = i as usize;
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// True if every bit in `start..start+len` is zero.
    pub fn range_is_zero(&self, start: u32, len: u32) -> bool {
        (start..start + len).all(|i| !self.get(i))
    }

    /// Store the 32 bits of `value` at wires `start..start+32`, bit `j` of the
    /// word landing on wire `start + j`.
    pub fn set_u32(&mut self, start: u32, value: u32) {
        for j in 0..32 {
            self.set(start + j, (value >> j) & 1 != 0);
        }
    }

    pub fn get_u32(&self, start: u32) -> u32 {
        let mut v = 0u32;
        for j in 0..32 {
            if self.get(start + j) {
                v |= 1 << j;
            }
        }
        v
    }

    /// Store the 64 bits of `value` at wires `start..start+64`, bit `z` of the
    /// word landing on wire `start + z`.
    pub fn set_u64(&mut self, start: u32, value: u64) {
        for z in 0..64 {
            self.set(start + z, (value >> z) & 1 != 0);
        }
    }

    pub fn get_u64(&self, start: u32) -> u64 {
        let mut v = 0u64;
        for z in 0..64 {
            if self.get(start + z) {
                v |= 1 << z;
            }
        }
        v
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len as u32).map(|i| self.get(i)).collect()
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = BitState::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            s.set(i as u32, b);
        }
        s
    }
}

/// Apply one classical gate in place.
#[inline]
pub fn apply_gate(gate: Gate, state: &mut BitState) -> Result<(), CircuitError> {
    match gate {
        Gate::X(t) => state.flip(t),
        Gate::Cnot { control, target } => {
            if state.get(control) {
                state.flip(target);
            }
        }
        Gate::Toffoli { c1, c2, target } => {
            if state.get(c1) && state.get(c2) {
                state.flip(target);
            }
        }
        other => return Err(CircuitError::NonClassicalGate(other.kind_name())),
    }
    Ok(())
}

/// Run a classical-reversible circuit on `state` in place.
pub fn run_in_place(circuit: &Circuit, state: &mut BitState) -> Result<(), CircuitError> {
    if state.len() != circuit.width() as usize {
        return Err(CircuitError::StateWidthMismatch {
            state: state.len(),
            width: circuit.width(),
        });
    }
    for &g in circuit.gates() {
        apply_gate(g, state)?;
    }
    Ok(())
}

/// Run a classical-reversible circuit, returning the output state.
pub fn run(circuit: &Circuit, state: &BitState) -> Result<BitState, CircuitError> {
    let mut out = state.clone();
    run_in_place(circuit, &mut out)?;
    Ok(out)
}
