//! Reversible SHA-256 circuit builder.
//!
//! The circuit operates on Toffoli-level gates over a fixed layout: the
//! 64-word message block (expanded in place), eight 32-bit working
//! registers, one round-constant register, three 32-bit ancilla words, and a
//! single adder carry wire. Working-variable renaming between rounds is pure
//! wire re-indexing and costs no gates; round constants are advanced in
//! place by X gates encoding `K[i] XOR K[i+1]`.
//!
//! Per round: nine in-place 32-bit additions (62 Toffoli each), one Ch block
//! (32 Toffoli, computed and uncomputed), one Maj block (64 Toffoli,
//! computed and uncomputed), and the four Σ/σ XOR blocks, all ancillas
//! returned to zero. Per stretch step: three additions plus one XOR copy and
//! two σ blocks, likewise clean.

use crate::circuit::{Circuit, CircuitBuilder, Gate, Register};
use crate::error::CircuitError;

use super::K;

const W_BASE: u32 = 0;
const STATE_BASE: u32 = 2048;
const K_BASE: u32 = 2304;
const S_BASE: u32 = 2336;
const X1_BASE: u32 = 2368;
const T2_BASE: u32 = 2400;
const CARRY: u32 = 2432;
const WIDTH: u32 = 2433;

/// Wire layout of the standard SHA-256 circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sha256Layout {
    width: u32,
}

impl Sha256Layout {
    pub fn standard() -> Sha256Layout {
        Sha256Layout { width: WIDTH }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Base wire of message word `i` (0..64).
    pub fn w_word(&self, i: usize) -> u32 {
        assert!(i < 64);
        W_BASE + 32 * i as u32
    }

    /// Base wire of physical working register `p` (0..8). Physical register
    /// `p` holds working variable `p` (a..h) before round 0 and again after
    /// every multiple of 8 rounds.
    pub fn state_word(&self, p: usize) -> u32 {
        assert!(p < 8);
        STATE_BASE + 32 * p as u32
    }

    /// Base wire of logical working variable `l` (0=a .. 7=h) as round
    /// `round` begins. Renaming shifts the mapping by one register per
    /// round: logical `l` lives in physical `(l - round) mod 8`.
    pub fn logical_state_word(&self, l: usize, round: usize) -> u32 {
        assert!(l < 8);
        self.state_word((l + 8 - round % 8) % 8)
    }

    /// Base wire of the round-constant register.
    pub fn k(&self) -> u32 {
        K_BASE
    }

    /// Base wire of the Σ/σ ancilla word.
    pub fn s(&self) -> u32 {
        S_BASE
    }

    /// Base wire of the Ch/Maj ancilla word.
    pub fn x1(&self) -> u32 {
        X1_BASE
    }

    /// Base wire of the t2 accumulator word.
    pub fn t2(&self) -> u32 {
        T2_BASE
    }

    /// The adder carry wire.
    pub fn carry(&self) -> u32 {
        CARRY
    }

    pub fn registers(&self) -> Vec<Register> {
        let mut regs = Vec::with_capacity(77);
        for i in 0..64 {
            regs.push(Register::new(format!("w{i}"), self.w_word(i), 32));
        }
        for (p, name) in ["a", "b", "c", "d", "e", "f", "g", "h"].iter().enumerate() {
            regs.push(Register::new(*name, self.state_word(p), 32));
        }
        regs.push(Register::new("k", K_BASE, 32));
        regs.push(Register::new("s", S_BASE, 32));
        regs.push(Register::new("x1", X1_BASE, 32));
        regs.push(Register::new("t2", T2_BASE, 32));
        regs.push(Register::new("carry", CARRY, 1));
        regs
    }
}

/// The four rotation/shift XOR blocks of the compression function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaKind {
    /// Rotations 2, 13, 22 (working-variable block).
    BigSigma0,
    /// Rotations 6, 11, 25 (working-variable block).
    BigSigma1,
    /// Rotations 7, 18 and right shift 3 (message schedule).
    SmallSigma0,
    /// Rotations 17, 19 and right shift 10 (message schedule).
    SmallSigma1,
}

impl SigmaKind {
    fn terms(self) -> (&'static [u32], Option<u32>) {
        match self {
            SigmaKind::BigSigma0 => (&[2, 13, 22], None),
            SigmaKind::BigSigma1 => (&[6, 11, 25], None),
            SigmaKind::SmallSigma0 => (&[7, 18], Some(3)),
            SigmaKind::SmallSigma1 => (&[17, 19], Some(10)),
        }
    }

    /// CNOTs emitted per 32-bit block.
    pub fn cnot_count(self) -> u64 {
        let (rots, shift) = self.terms();
        let rot = 32 * rots.len() as u64;
        match shift {
            Some(s) => rot + (32 - s as u64),
            None => rot,
        }
    }
}

/// dst ^= Σ(src), one CNOT per XOR term per bit. Bit `j` of a word sits on
/// wire `base + j`; a right-rotation by `r` maps output bit `j` to input bit
/// `(j + r) mod 32`, a right-shift by `s` to input bit `j + s` when present.
fn emit_sigma(b: &mut CircuitBuilder, kind: SigmaKind, src: u32, dst: u32) {
    let (rots, shift) = kind.terms();
    for j in 0..32 {
        for &r in rots {
            b.push(Gate::Cnot {
                control: src + (j + r) % 32,
                target: dst + j,
            });
        }
        if let Some(s) = shift {
            if j + s < 32 {
                b.push(Gate::Cnot {
                    control: src + j + s,
                    target: dst + j,
                });
            }
        }
    }
}

/// In-place ripple-carry addition `(a, b, 0) -> (a, a+b mod 2^32, 0)`.
///
/// Majority cells propagate the carry up through the `a` register (using the
/// dedicated carry wire below bit 0), the top bit takes its sum directly,
/// and the unmajority sweep restores `a` and the carry while depositing the
/// sum bits in `b`: 62 Toffoli and 126 CNOT in total.
fn adder_gates(a: u32, b: u32, carry: u32) -> Vec<Gate> {
    let mut g = Vec::with_capacity(188);
    let w = |i: u32| if i == 0 { carry } else { a + i - 1 };
    for i in 0..31 {
        g.push(Gate::Cnot {
            control: a + i,
            target: b + i,
        });
        g.push(Gate::Cnot {
            control: a + i,
            target: w(i),
        });
        g.push(Gate::Toffoli {
            c1: w(i),
            c2: b + i,
            target: a + i,
        });
    }
    g.push(Gate::Cnot {
        control: a + 31,
        target: b + 31,
    });
    g.push(Gate::Cnot {
        control: a + 30,
        target: b + 31,
    });
    for i in (0..31).rev() {
        g.push(Gate::Toffoli {
            c1: w(i),
            c2: b + i,
            target: a + i,
        });
        g.push(Gate::Cnot {
            control: a + i,
            target: w(i),
        });
        g.push(Gate::Cnot {
            control: w(i),
            target: b + i,
        });
    }
    g
}

fn emit_adder(builder: &mut CircuitBuilder, a: u32, b: u32, carry: u32) {
    for g in adder_gates(a, b, carry) {
        builder.push(g);
    }
}

/// Inverse addition `b -= a` (classical gates are self-inverse, so the
/// reversed sequence undoes the adder).
fn emit_adder_inverse(builder: &mut CircuitBuilder, a: u32, b: u32, carry: u32) {
    for g in adder_gates(a, b, carry).into_iter().rev() {
        builder.push(g);
    }
}

/// Per bit: anc ^= Maj(a, b, c), leaving the `b` line holding `a XOR b`
/// until the reversed sequence restores it. One CNOT and two Toffoli per bit.
fn maj_word_gates(a: u32, b: u32, c: u32, anc: u32) -> Vec<Gate> {
    let mut g = Vec::with_capacity(96);
    for j in 0..32 {
        g.push(Gate::Toffoli {
            c1: a + j,
            c2: b + j,
            target: anc + j,
        });
        g.push(Gate::Cnot {
            control: a + j,
            target: b + j,
        });
        g.push(Gate::Toffoli {
            c1: b + j,
            c2: c + j,
            target: anc + j,
        });
    }
    g
}

/// Per bit: anc ^= Ch(e, f, g) = g XOR e·(f XOR g), leaving the `g` line
/// holding `f XOR g` until the reversed sequence restores it. Two CNOT and
/// one Toffoli per bit.
fn ch_word_gates(e: u32, f: u32, g_reg: u32, anc: u32) -> Vec<Gate> {
    let mut g = Vec::with_capacity(96);
    for j in 0..32 {
        g.push(Gate::Cnot {
            control: g_reg + j,
            target: anc + j,
        });
        g.push(Gate::Cnot {
            control: f + j,
            target: g_reg + j,
        });
        g.push(Gate::Toffoli {
            c1: e + j,
            c2: g_reg + j,
            target: anc + j,
        });
    }
    g
}

fn push_all(builder: &mut CircuitBuilder, gates: &[Gate]) {
    for &g in gates {
        builder.push(g);
    }
}

fn push_all_rev(builder: &mut CircuitBuilder, gates: &[Gate]) {
    for &g in gates.iter().rev() {
        builder.push(g);
    }
}

fn layout_builder() -> CircuitBuilder {
    CircuitBuilder::with_registers(Sha256Layout::standard().registers())
        .expect("standard layout registers tile the width")
}

/// One compression round (round constant assumed present in the constant
/// register; its in-place advance is emitted by [`build_sha256`]).
pub fn build_round(round: usize) -> Circuit {
    assert!(round < 64);
    let mut b = layout_builder();
    emit_round(&mut b, round);
    b.finish()
}

fn emit_round(b: &mut CircuitBuilder, round: usize) {
    let lay = Sha256Layout::standard();
    let reg = |l: usize| lay.logical_state_word(l, round);
    let (ra, rb, rc, rd) = (reg(0), reg(1), reg(2), reg(3));
    let (re, rf, rg, rh) = (reg(4), reg(5), reg(6), reg(7));
    let (s, x1, t2, carry) = (lay.s(), lay.x1(), lay.t2(), lay.carry());
    let k = lay.k();
    let w_i = lay.w_word(round);

    // t1 = h + Σ1(e) + Ch(e,f,g) + K[round] + W[round], accumulated in h.
    emit_sigma(b, SigmaKind::BigSigma1, re, s);
    let ch = ch_word_gates(re, rf, rg, x1);
    push_all(b, &ch);
    emit_adder(b, s, rh, carry);
    emit_adder(b, x1, rh, carry);
    emit_adder(b, k, rh, carry);
    emit_adder(b, w_i, rh, carry);
    push_all_rev(b, &ch);
    emit_sigma(b, SigmaKind::BigSigma1, re, s);

    // e_new = d + t1.
    emit_adder(b, rh, rd, carry);

    // t2 = Σ0(a) + Maj(a,b,c); a_new = t1 + t2, accumulated in h.
    emit_sigma(b, SigmaKind::BigSigma0, ra, s);
    let maj = maj_word_gates(ra, rb, rc, x1);
    push_all(b, &maj);
    emit_adder(b, s, t2, carry);
    emit_adder(b, x1, t2, carry);
    emit_adder(b, t2, rh, carry);

    // Unwind: t2 - Maj leaves exactly Σ0(a), which the XOR sweep clears.
    emit_adder_inverse(b, x1, t2, carry);
    for j in 0..32 {
        b.push(Gate::Cnot {
            control: s + j,
            target: t2 + j,
        });
    }
    push_all_rev(b, &maj);
    emit_sigma(b, SigmaKind::BigSigma0, ra, s);
}

/// One message-schedule step: W[i] = W[i-16] + σ0(W[i-15]) + W[i-7] + σ1(W[i-2])
/// computed in place into the (initially zero) word `W[i]`.
pub fn build_stretch(i: usize) -> Circuit {
    assert!((16..64).contains(&i));
    let mut b = layout_builder();
    emit_stretch(&mut b, i);
    b.finish()
}

fn emit_stretch(b: &mut CircuitBuilder, i: usize) {
    let lay = Sha256Layout::standard();
    let (s, carry) = (lay.s(), lay.carry());
    let w = |j: usize| lay.w_word(j);

    for j in 0..32 {
        b.push(Gate::Cnot {
            control: w(i - 16) + j,
            target: w(i) + j,
        });
    }
    emit_sigma(b, SigmaKind::SmallSigma0, w(i - 15), s);
    emit_adder(b, s, w(i), carry);
    emit_adder(b, w(i - 7), w(i), carry);
    emit_sigma(b, SigmaKind::SmallSigma0, w(i - 15), s);
    emit_sigma(b, SigmaKind::SmallSigma1, w(i - 2), s);
    emit_adder(b, s, w(i), carry);
    emit_sigma(b, SigmaKind::SmallSigma1, w(i - 2), s);
}

/// Advance the constant register from K[i] to K[i+1] with X gates.
fn emit_k_update(b: &mut CircuitBuilder, i: usize) {
    let diff = K[i] ^ K[i + 1];
    let k = Sha256Layout::standard().k();
    for j in 0..32 {
        if (diff >> j) & 1 != 0 {
            b.push(Gate::X(k + j));
        }
    }
}

/// The full single-block circuit: 48 message-schedule steps followed by 64
/// compression rounds (with in-place round-constant advances between them).
///
/// The harness loads the message words, initial hash value, and K[0] into
/// the initial bit state, and performs the final chaining addition on the
/// extracted output; neither appears as circuit gates.
pub fn build_sha256() -> (Circuit, Sha256Layout) {
    let mut b = layout_builder();
    for i in 16..64 {
        emit_stretch(&mut b, i);
    }
    for round in 0..64 {
        emit_round(&mut b, round);
        if round < 63 {
            emit_k_update(&mut b, round);
        }
    }
    (b.finish(), Sha256Layout::standard())
}

fn registers_cover(regs: &[&Register], extra: &[u32]) -> Result<u32, CircuitError> {
    let mut max = 0u32;
    for r in regs {
        max = max.max(r.end());
    }
    for &w in extra {
        max = max.max(w + 1);
    }
    let mut used = vec![false; max as usize];
    let mut mark = |wire: u32| -> Result<(), CircuitError> {
        let slot = &mut used[wire as usize];
        if *slot {
            return Err(CircuitError::BadRegisters { width: max });
        }
        *slot = true;
        Ok(())
    };
    for r in regs {
        for off in 0..r.len {
            mark(r.wire(off))?;
        }
    }
    for &w in extra {
        mark(w)?;
    }
    Ok(max)
}

/// Standalone Σ/σ block `dst ^= kind(src)` over two disjoint 32-wire
/// registers.
pub fn build_sigma(kind: SigmaKind, src: Register, dst: Register) -> Result<Circuit, CircuitError> {
    if src.len != 32 || dst.len != 32 {
        return Err(CircuitError::BadRegisters {
            width: src.len.max(dst.len),
        });
    }
    let width = registers_cover(&[&src, &dst], &[])?;
    let mut b = CircuitBuilder::new(width);
    emit_sigma(&mut b, kind, src.start, dst.start);
    Ok(b.finish())
}

/// Standalone in-place adder `(a, b, 0) -> (a, a+b mod 2^32, 0)` with one
/// carry ancilla.
pub fn build_adder(a: Register, b: Register, carry: u32) -> Result<Circuit, CircuitError> {
    if a.len != 32 || b.len != 32 {
        return Err(CircuitError::BadRegisters {
            width: a.len.max(b.len),
        });
    }
    let width = registers_cover(&[&a, &b], &[carry])?;
    let mut builder = CircuitBuilder::new(width);
    emit_adder(&mut builder, a.start, b.start, carry);
    Ok(builder.finish())
}

/// Standalone one-bit majority: anc ^= Maj(a, b, c), the `b` wire left
/// holding `a XOR b` (the reversed circuit restores it).
pub fn build_maj(a: u32, b: u32, c: u32, anc: u32) -> Result<Circuit, CircuitError> {
    let width = registers_cover(&[], &[a, b, c, anc])?;
    let mut builder = CircuitBuilder::new(width);
    builder.push(Gate::Toffoli {
        c1: a,
        c2: b,
        target: anc,
    });
    builder.push(Gate::Cnot {
        control: a,
        target: b,
    });
    builder.push(Gate::Toffoli {
        c1: b,
        c2: c,
        target: anc,
    });
    Ok(builder.finish())
}

/// Standalone one-bit choice: anc ^= Ch(e, f, g), the `g` wire left holding
/// `f XOR g` (the reversed circuit restores it).
pub fn build_ch(e: u32, f: u32, g: u32, anc: u32) -> Result<Circuit, CircuitError> {
    let width = registers_cover(&[], &[e, f, g, anc])?;
    let mut builder = CircuitBuilder::new(width);
    builder.push(Gate::Cnot {
        control: g,
        target: anc,
    });
    builder.push(Gate::Cnot {
        control: f,
        target: g,
    });
    builder.push(Gate::Toffoli {
        c1: e,
        c2: g,
        target: anc,
    });
    Ok(builder.finish())
}
