//! Reversible Keccak-p[1600,24] circuit builder.
//!
//! Each round works against a 1600-wire temporary register that starts and
//! ends at zero: the linear mixing step is computed into it, the state is
//! cleared by the mixing step's matrix inverse, the rotation/permutation
//! step is applied as pure re-indexing, the nonlinear row step writes the
//! new state, its inverse clears the temporary register, and the round
//! constant is injected with X gates.

use std::io::{self, Write};
use std::sync::OnceLock;

use serde::Serialize;

use crate::circuit::{Circuit, CircuitBuilder, Gate};
use crate::counts::count_resources;
use crate::lower::lower;
use crate::sim::{run_in_place, BitState};
use crate::textio::StreamWriter;

use super::{wire, KeccakLayout, RC, RHO, STATE_BITS};

const N: usize = STATE_BITS as usize;
const WORDS: usize = N / 64;

/// 1600x1600 bit matrix over GF(2), rows as 64-bit word blocks.
type BitMatrix = Vec<[u64; WORDS]>;

fn bit(row: &[u64; WORDS], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 != 0
}

fn set_bit(row: &mut [u64; WORDS], j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

/// Matrix of the linear mixing step: row `wire(x,y,z)` sets the eleven
/// input bits feeding that output bit.
fn theta_matrix() -> BitMatrix {
    let mut m = vec![[0u64; WORDS]; N];
    for x in 0..5 {
        for y in 0..5 {
            for z in 0..64 {
                let row = &mut m[wire(x, y, z) as usize];
                set_bit(row, wire(x, y, z) as usize);
                for yp in 0..5 {
                    set_bit(row, wire((x + 4) % 5, yp, z) as usize);
                    set_bit(row, wire((x + 1) % 5, yp, (z + 63) % 64) as usize);
                }
            }
        }
    }
    m
}

/// Gauss-Jordan inversion over GF(2).
fn invert(mut a: BitMatrix) -> BitMatrix {
    let mut inv = vec![[0u64; WORDS]; N];
    for (i, row) in inv.iter_mut().enumerate() {
        set_bit(row, i);
    }
    for col in 0..N {
        let pivot = (col..N)
            .find(|&r| bit(&a[r], col))
            .expect("mixing-step matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let (a_col, inv_col) = (a[col], inv[col]);
        for r in 0..N {
            if r != col && bit(&a[r], col) {
                for w in 0..WORDS {
                    a[r][w] ^= a_col[w];
                    inv[r][w] ^= inv_col[w];
                }
            }
        }
    }
    inv
}

fn theta_matrix_inverse() -> &'static BitMatrix {
    static INV: OnceLock<BitMatrix> = OnceLock::new();
    INV.get_or_init(|| invert(theta_matrix()))
}

/// Total CNOTs needed to apply the inverse mixing matrix (its population
/// count): 1,361,600. The off-diagonal part has 1,360,000 entries; the
/// 1600 diagonal entries are also ones because every output bit depends on
/// its own input bit.
pub fn theta_inverse_cnot_count() -> u64 {
    theta_matrix_inverse()
        .iter()
        .map(|row| row.iter().map(|w| w.count_ones() as u64).sum::<u64>())
        .sum()
}

fn layout_builder(layout: &KeccakLayout) -> CircuitBuilder {
    CircuitBuilder::with_registers(layout.registers()).expect("lane registers tile the width")
}

/// Linear mixing step into the temporary register: for every bit,
/// temp(x,y,z) ^= A(x,y,z) XOR column parity (x-1, z) XOR column parity
/// (x+1, z-1); eleven CNOTs per output bit, 17600 total.
///
/// Lanes are emitted serpentine-fashion, each target taking its previously
/// touched neighbour-column source first and its own direct source last, so
/// consecutive lanes overlap in exactly one layer and the whole block
/// levels to depth 275.
pub fn build_theta(layout: &KeccakLayout) -> Circuit {
    let mut b = layout_builder(layout);
    let lanes: Vec<(usize, usize)> = (0..5).flat_map(|y| (0..5).map(move |x| (x, y))).collect();
    for (k, &(x, y)) in lanes.iter().enumerate() {
        let (px, py) = if k > 0 { lanes[k - 1] } else { ((x + 4) % 5, y) };
        debug_assert_eq!(px, (x + 4) % 5);
        for z in 0..64 {
            let target = layout.anc_wire(x, y, z);
            let mut push = |c: u32| b.push(Gate::Cnot { control: c, target });
            push(layout.state_wire(px, py, z));
            for yp in 0..5 {
                if yp != py {
                    push(layout.state_wire((x + 4) % 5, yp, z));
                }
            }
            for yp in 0..5 {
                push(layout.state_wire((x + 1) % 5, yp, (z + 63) % 64));
            }
            push(layout.state_wire(x, y, z));
        }
    }
    b.finish()
}

/// Clears the state register given the temporary register holding the mixed
/// state: XORs the inverse mixing matrix of the temporary register into the
/// state, mapping (A, theta(A)) to (0, theta(A)). CNOT-only.
pub fn build_theta_inv(layout: &KeccakLayout) -> Circuit {
    let inv = theta_matrix_inverse();
    let mut b = layout_builder(layout);
    b.reserve(theta_inverse_cnot_count() as usize);
    for (i, row) in inv.iter().enumerate() {
        for (w, &word) in row.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let j = 64 * w + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                b.push(Gate::Cnot {
                    control: STATE_BITS + j as u32,
                    target: i as u32,
                });
            }
        }
    }
    b.finish()
}

/// Forward wire permutation of the combined rotation and lane-permutation
/// steps: the bit on wire `i` moves to wire `perm[i]`. Applied by
/// re-indexing the sources of later gates; it contributes no gates itself.
pub fn rho_pi_permutation(layout: &KeccakLayout) -> Vec<u32> {
    let _ = layout;
    let mut perm = vec![0u32; N];
    for x in 0..5 {
        for y in 0..5 {
            for z in 0..64 {
                let dz = (z + RHO[x][y] as usize) % 64;
                perm[wire(x, y, z) as usize] = wire(y, (2 * x + 3 * y) % 5, dz);
            }
        }
    }
    perm
}

/// Source coordinates feeding output bit (x, y, z) through the
/// rotation/permutation re-indexing.
fn rho_pi_source(x: usize, y: usize, z: usize) -> (usize, usize, usize) {
    let sx = (x + 3 * y) % 5;
    let sy = x;
    let r = RHO[sx][sy] as usize;
    (sx, sy, (z + 64 - r) % 64)
}

/// The five temporary-register wires feeding row (y, z) of the nonlinear
/// step, and the five state wires receiving it.
fn row_wires(layout: &KeccakLayout, y: usize, z: usize) -> ([u32; 5], [u32; 5]) {
    let mut top = [0u32; 5];
    let mut bot = [0u32; 5];
    for x in 0..5 {
        top[x] = layout.state_wire(x, y, z);
        let (sx, sy, sz) = rho_pi_source(x, y, z);
        bot[x] = layout.anc_wire(sx, sy, sz);
    }
    (top, bot)
}

/// Nonlinear row step into the cleared state register: per output bit,
/// state(x) = temp(x) XOR temp(x+2) XOR temp(x+1)*temp(x+2), the temporary
/// register read through the rotation/permutation re-indexing. Ten CNOTs
/// and five Toffolis per row; the Toffolis level into 5 stages.
pub fn build_chi(layout: &KeccakLayout) -> Circuit {
    let mut b = layout_builder(layout);
    for y in 0..5 {
        for z in 0..64 {
            let (top, bot) = row_wires(layout, y, z);
            for x in 0..5 {
                b.push(Gate::Cnot {
                    control: bot[x],
                    target: top[x],
                });
                b.push(Gate::Cnot {
                    control: bot[(x + 2) % 5],
                    target: top[x],
                });
                b.push(Gate::Toffoli {
                    c1: bot[(x + 1) % 5],
                    c2: bot[(x + 2) % 5],
                    target: top[x],
                });
            }
        }
    }
    b.finish()
}

/// Clears the temporary register given the state register holding the
/// nonlinear-step output: row by row, rewinds the stale pre-step values to
/// zero using the outputs. Seventeen CNOTs and six Toffolis per row; the
/// Toffolis level into 6 stages.
pub fn build_chi_inv(layout: &KeccakLayout) -> Circuit {
    let mut b = layout_builder(layout);
    for y in 0..5 {
        for z in 0..64 {
            let (t, bb) = row_wires(layout, y, z);
            let cn = |b: &mut CircuitBuilder, c: u32, tg: u32| {
                b.push(Gate::Cnot {
                    control: c,
                    target: tg,
                })
            };
            let tof = |b: &mut CircuitBuilder, c1: u32, c2: u32, tg: u32| {
                b.push(Gate::Toffoli {
                    c1,
                    c2,
                    target: tg,
                })
            };
            cn(&mut b, t[4], bb[4]);
            cn(&mut b, bb[4], bb[2]);
            tof(&mut b, t[3], bb[4], bb[2]);
            cn(&mut b, t[4], bb[4]);
            cn(&mut b, t[3], bb[3]);

            cn(&mut b, t[4], bb[4]);
            cn(&mut b, bb[1], bb[4]);
            tof(&mut b, t[0], bb[1], bb[4]);
            cn(&mut b, t[3], bb[3]);
            cn(&mut b, t[0], bb[0]);

            cn(&mut b, t[1], bb[1]);
            cn(&mut b, bb[3], bb[1]);
            tof(&mut b, t[2], bb[3], bb[1]);
            cn(&mut b, t[0], bb[0]);

            cn(&mut b, t[3], bb[3]);
            cn(&mut b, bb[0], bb[3]);
            tof(&mut b, t[4], bb[0], bb[3]);

            cn(&mut b, t[0], bb[0]);
            cn(&mut b, bb[2], bb[0]);
            tof(&mut b, t[1], bb[2], bb[0]);

            cn(&mut b, t[2], bb[2]);
            cn(&mut b, t[4], bb[2]);
            tof(&mut b, t[3], t[4], bb[2]);
        }
    }
    b.finish()
}

/// Round-constant injection: X gates on the set bits of the round's
/// constant, in lane (0, 0) of the state register.
pub fn build_iota(round: usize) -> Circuit {
    assert!(round < 24);
    let layout = KeccakLayout::standard();
    let mut b = layout_builder(&layout);
    for z in 0..64 {
        if RC[round] >> z & 1 != 0 {
            b.push(Gate::X(layout.state_wire(0, 0, z)));
        }
    }
    b.finish()
}

/// Resource summary of one circuit component, at the Toffoli level and
/// after lowering to the Clifford+T alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentRow {
    pub cnot: u64,
    pub toffoli: u64,
    pub x: u64,
    pub depth: u64,
    pub toffoli_stages: u64,
    pub t_lowered: u64,
    pub h_lowered: u64,
    pub cnot_lowered: u64,
    pub t_depth_lowered: u64,
}

fn component_row(c: &Circuit) -> ComponentRow {
    let rc = count_resources(c).expect("built circuit is well-formed");
    let lc = count_resources(&lower(c)).expect("lowered circuit is well-formed");
    ComponentRow {
        cnot: rc.cnot,
        toffoli: rc.toffoli,
        x: rc.x,
        depth: rc.total_depth,
        toffoli_stages: rc.toffoli_stages,
        t_lowered: lc.t_count,
        h_lowered: lc.h,
        cnot_lowered: lc.cnot,
        t_depth_lowered: lc.t_depth,
    }
}

/// Per-component resource report for the full 24-round permutation.
///
/// Stage and depth totals follow per-component accounting: each component
/// is levelled in isolation and the 24 rounds add up. A monolithic layering
/// of the concatenated gate list would interleave adjacent components and
/// measure something else.
#[derive(Debug, Clone, Serialize)]
pub struct KeccakComponentReport {
    pub rounds: u32,
    pub width: u32,
    pub theta: ComponentRow,
    pub theta_inv: ComponentRow,
    pub chi: ComponentRow,
    pub chi_inv: ComponentRow,
    /// X gates over all 24 round-constant injections.
    pub iota_x_total: u64,
    pub total_toffoli: u64,
    pub total_cnot: u64,
    pub total_x: u64,
    pub total_t_lowered: u64,
    pub total_h_lowered: u64,
    pub total_cnot_lowered: u64,
    pub toffoli_stages: u64,
    pub t_depth_lowered: u64,
}

/// The reversible permutation circuit, held as its per-round components.
///
/// One round applies, in order: mixing step, inverse mixing step, nonlinear
/// step (reading through the rotation/permutation re-indexing), inverse
/// nonlinear step, round constant. The first four are round-independent and
/// stored once; replaying them 24 times with the per-round constants yields
/// the full permutation without materializing its 33-million-gate list.
pub struct KeccakCircuit {
    layout: KeccakLayout,
    theta: Circuit,
    theta_inv: Circuit,
    chi: Circuit,
    chi_inv: Circuit,
    iota: Vec<Circuit>,
}

/// Build the shared per-round components once.
pub fn build_components() -> KeccakCircuit {
    let layout = KeccakLayout::standard();
    KeccakCircuit {
        layout,
        theta: build_theta(&layout),
        theta_inv: build_theta_inv(&layout),
        chi: build_chi(&layout),
        chi_inv: build_chi_inv(&layout),
        iota: (0..24).map(build_iota).collect(),
    }
}

impl KeccakCircuit {
    pub fn layout(&self) -> &KeccakLayout {
        &self.layout
    }

    pub fn rounds(&self) -> usize {
        24
    }

    /// The five component circuits of one round, in application order.
    pub fn round_components(&self, round: usize) -> [&Circuit; 5] {
        [
            &self.theta,
            &self.theta_inv,
            &self.chi,
            &self.chi_inv,
            &self.iota[round],
        ]
    }

    /// Total gate count of the full 24-round circuit.
    pub fn gate_len(&self) -> u64 {
        let per_round = (self.theta.len() + self.theta_inv.len() + self.chi.len()
            + self.chi_inv.len()) as u64;
        let iota: u64 = self.iota.iter().map(|c| c.len() as u64).sum();
        24 * per_round + iota
    }

    /// Stream every gate of the full circuit in application order.
    pub fn for_each_gate<F: FnMut(Gate)>(&self, mut f: F) {
        for round in 0..24 {
            for part in self.round_components(round) {
                for &g in part.gates() {
                    f(g);
                }
            }
        }
    }

    /// Apply one round to a 3200-wire bit state.
    pub fn run_round(&self, round: usize, state: &mut BitState) {
        for part in self.round_components(round) {
            run_in_place(part, state).expect("built circuit is classical and well-formed");
        }
    }

    /// Apply all 24 rounds.
    pub fn run(&self, state: &mut BitState) {
        for round in 0..24 {
            self.run_round(round, state);
        }
    }

    /// Compute the per-component resource report.
    pub fn report(&self) -> KeccakComponentReport {
        let theta = component_row(&self.theta);
        let theta_inv = component_row(&self.theta_inv);
        let chi = component_row(&self.chi);
        let chi_inv = component_row(&self.chi_inv);
        let iota_x_total: u64 = self
            .iota
            .iter()
            .map(|c| count_resources(c).expect("well-formed").x)
            .sum();
        let parts = [&theta, &theta_inv, &chi, &chi_inv];
        KeccakComponentReport {
            rounds: 24,
            width: self.layout.width(),
            total_toffoli: 24 * parts.iter().map(|p| p.toffoli).sum::<u64>(),
            total_cnot: 24 * parts.iter().map(|p| p.cnot).sum::<u64>(),
            total_x: iota_x_total,
            total_t_lowered: 24 * parts.iter().map(|p| p.t_lowered).sum::<u64>(),
            total_h_lowered: 24 * parts.iter().map(|p| p.h_lowered).sum::<u64>(),
            total_cnot_lowered: 24 * parts.iter().map(|p| p.cnot_lowered).sum::<u64>(),
            toffoli_stages: 24 * parts.iter().map(|p| p.toffoli_stages).sum::<u64>(),
            t_depth_lowered: 24 * parts.iter().map(|p| p.t_depth_lowered).sum::<u64>(),
            theta,
            theta_inv,
            chi,
            chi_inv,
            iota_x_total,
        }
    }

    /// Stream the full circuit to a writer in the circuit text format.
    pub fn write_text<Wr: Write>(&self, w: Wr) -> io::Result<Wr> {
        let mut sw = StreamWriter::new(w, &self.layout.registers())?;
        for round in 0..24 {
            for part in self.round_components(round) {
                for &g in part.gates() {
                    sw.gate(g)?;
                }
            }
        }
        sw.finish()
    }
}

/// Materialize the full 24-round permutation as a single flat circuit
/// (roughly 33 million gates; the component form in [`KeccakCircuit`] is
/// cheaper when the flat gate list is not required).
pub fn build_keccak_p() -> (Circuit, KeccakLayout) {
    let parts = build_components();
    let mut b = layout_builder(&parts.layout);
    b.reserve(parts.gate_len() as usize);
    for round in 0..24 {
        for part in parts.round_components(round) {
            b.extend_from(part);
        }
    }
    (b.finish(), parts.layout)
}
