//! Keccak-p[1600,24]: round constants and rotation offsets, software
//! reference oracle, reversible circuit builder, and the end-to-end
//! verification harness.

pub mod builder;
pub mod reference;

pub use builder::{
    build_chi, build_chi_inv, build_components, build_iota, build_keccak_p, build_theta,
    build_theta_inv, rho_pi_permutation, theta_inverse_cnot_count, ComponentRow, KeccakCircuit,
    KeccakComponentReport,
};

use crate::sim::BitState;

/// Lane size in bits.
pub const W: u32 = 64;
/// State register width in bits (5x5 lanes of 64).
pub const STATE_BITS: u32 = 1600;

/// Round constants for the 24 rounds, applied to lane (0,0).
pub const RC: [u64; 24] = [
    0x0000000000000001, 0x0000000000008082, 0x800000000000808a, 0x8000000080008000,
    0x000000000000808b, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008a, 0x0000000000000088, 0x0000000080008009, 0x000000008000000a,
    0x000000008000808b, 0x800000000000008b, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800a, 0x800000008000000a,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
];

/// Rotation offsets, indexed `RHO[x][y]`.
pub const RHO: [[u32; 5]; 5] = [
    [0, 36, 3, 41, 18],
    [1, 44, 10, 45, 2],
    [62, 6, 43, 15, 61],
    [28, 55, 25, 21, 56],
    [27, 20, 39, 8, 14],
];

/// Wire index of state bit (x, y, z): lanes are laid out in row-major
/// (y, x) order, 64 bits per lane.
pub fn wire(x: usize, y: usize, z: usize) -> u32 {
    debug_assert!(x < 5 && y < 5 && z < 64);
    64 * (5 * y as u32 + x as u32) + z as u32
}

/// Wire layout of the permutation circuit: 1600 state wires followed by a
/// 1600-wire temporary register that is zero at every round boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeccakLayout {
    width: u32,
}

impl KeccakLayout {
    pub fn standard() -> KeccakLayout {
        KeccakLayout { width: 2 * STATE_BITS }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// State wire for bit (x, y, z).
    pub fn state_wire(&self, x: usize, y: usize, z: usize) -> u32 {
        wire(x, y, z)
    }

    /// Temporary-register wire for bit (x, y, z).
    pub fn anc_wire(&self, x: usize, y: usize, z: usize) -> u32 {
        STATE_BITS + wire(x, y, z)
    }

    /// One 64-wire register per lane: state lanes `a{x}{y}`, temporary
    /// lanes `b{x}{y}`.
    pub fn registers(&self) -> Vec<crate::circuit::Register> {
        let mut regs = Vec::with_capacity(50);
        for prefix in ["a", "b"] {
            for y in 0..5 {
                for x in 0..5 {
                    let start = if prefix == "a" {
                        self.state_wire(x, y, 0)
                    } else {
                        self.anc_wire(x, y, 0)
                    };
                    regs.push(crate::circuit::Register::new(
                        format!("{prefix}{x}{y}"),
                        start,
                        64,
                    ));
                }
            }
        }
        regs
    }

    /// Load 25 lanes into the state register of a fresh all-zero bit state.
    pub fn state_from_lanes(&self, lanes: &[u64; 25]) -> BitState {
        let mut s = BitState::zeros(self.width as usize);
        for y in 0..5 {
            for x in 0..5 {
                s.set_u64(self.state_wire(x, y, 0), lanes[5 * y + x]);
            }
        }
        s
    }

    /// Extract the 25 state lanes from a bit state.
    pub fn lanes_from_state(&self, s: &BitState) -> [u64; 25] {
        let mut lanes = [0u64; 25];
        for y in 0..5 {
            for x in 0..5 {
                lanes[5 * y + x] = s.get_u64(self.state_wire(x, y, 0));
            }
        }
        lanes
    }
}

impl Default for KeccakLayout {
    fn default() -> Self {
        Self::standard()
    }
}

/// Outcome of checking one state through the reversible permutation circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeccakVerify {
    pub pass: bool,
    pub output: [u64; 25],
    pub expected: [u64; 25],
    /// Lane coordinates (x, y) and bit z of the first differing state bit.
    pub first_diff: Option<(usize, usize, usize)>,
    /// Lane coordinates of the first dirty temporary-register bit, with the
    /// round (0-based) after which it was observed.
    pub dirty_ancilla: Option<(usize, usize, usize, usize)>,
}

/// Run the reversible Keccak-p[1600,24] circuit on each 25-lane state and
/// compare against the software reference, checking the temporary register
/// is clear after every round.
pub fn verify_keccak_p(states: &[[u64; 25]]) -> Vec<KeccakVerify> {
    let circuit = builder::build_components();
    states.iter().map(|s| verify_one(&circuit, s)).collect()
}

fn verify_one(circuit: &KeccakCircuit, lanes: &[u64; 25]) -> KeccakVerify {
    let layout = KeccakLayout::standard();
    let mut state = layout.state_from_lanes(lanes);

    let mut dirty_ancilla = None;
    for round in 0..24 {
        circuit.run_round(round, &mut state);
        if dirty_ancilla.is_none() {
            'scan: for y in 0..5 {
                for x in 0..5 {
                    let lane = state.get_u64(layout.anc_wire(x, y, 0));
                    if lane != 0 {
                        let z = lane.trailing_zeros() as usize;
                        dirty_ancilla = Some((x, y, z, round));
                        break 'scan;
                    }
                }
            }
        }
    }

    let output = layout.lanes_from_state(&state);
    let mut expected = *lanes;
    reference::keccak_p(&mut expected);

    let mut first_diff = None;
    'diff: for y in 0..5 {
        for x in 0..5 {
            let d = output[5 * y + x] ^ expected[5 * y + x];
            if d != 0 {
                first_diff = Some((x, y, d.trailing_zeros() as usize));
                break 'diff;
            }
        }
    }

    KeccakVerify {
        pass: first_diff.is_none() && dirty_ancilla.is_none(),
        output,
        expected,
        first_diff,
        dirty_ancilla,
    }
}
