//! Gate-level intermediate representation: gates, registers, and circuits.
//!
//! A [`Circuit`] is an ordered list of gates over `width` wires, partitioned
//! into named contiguous registers. Circuits are immutable once built; use
//! [`CircuitBuilder`] to construct one and [`Circuit::compose`] /
//! [`Circuit::inverse`] to derive new ones.

use crate::error::CircuitError;

/// One gate from the reversible / Clifford+T alphabet.
///
/// Multi-wire gates list controls first and the target last; operands must be
/// pairwise distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    X(u32),
    H(u32),
    T(u32),
    Tdg(u32),
    P(u32),
    Pdg(u32),
    Z(u32),
    Cnot { control: u32, target: u32 },
    Toffoli { c1: u32, c2: u32, target: u32 },
}

impl Gate {
    /// Operand wires in order (controls first, target last) and their count.
    pub fn operands(&self) -> ([u32; 3], usize) {
        match *self {
            Gate::X(t)
            | Gate::H(t)
            | Gate::T(t)
            | Gate::Tdg(t)
            | Gate::P(t)
            | Gate::Pdg(t)
            | Gate::Z(t) => ([t, 0, 0], 1),
            Gate::Cnot { control, target } => ([control, target, 0], 2),
            Gate::Toffoli { c1, c2, target } => ([c1, c2, target], 3),
        }
    }

    /// The wire whose state the gate changes.
    pub fn target(&self) -> u32 {
        let (ops, n) = self.operands();
        ops[n - 1]
    }

    /// True for gates with purely classical action on basis states
    /// (X, CNOT, Toffoli).
    pub fn is_classical(&self) -> bool {
        matches!(self, Gate::X(_) | Gate::Cnot { .. } | Gate::Toffoli { .. })
    }

    /// The inverse gate: T and P swap with their daggers, everything else is
    /// self-inverse.
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::T(w) => Gate::Tdg(w),
            Gate::Tdg(w) => Gate::T(w),
            Gate::P(w) => Gate::Pdg(w),
            Gate::Pdg(w) => Gate::P(w),
            g => g,
        }
    }

    /// Short mnemonic used in error messages and reports.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Gate::X(_) => "X",
            Gate::H(_) => "H",
            Gate::T(_) => "T",
            Gate::Tdg(_) => "T*",
            Gate::P(_) => "P",
            Gate::Pdg(_) => "P*",
            Gate::Z(_) => "Z",
            Gate::Cnot { .. } => "CNOT",
            Gate::Toffoli { .. } => "Toffoli",
        }
    }

    /// Rebuild the gate with every operand passed through `f`.
    pub fn map_wires(&self, mut f: impl FnMut(u32) -> u32) -> Gate {
        match *self {
            Gate::X(t) => Gate::X(f(t)),
            Gate::H(t) => Gate::H(f(t)),
            Gate::T(t) => Gate::T(f(t)),
            Gate::Tdg(t) => Gate::Tdg(f(t)),
            Gate::P(t) => Gate::P(f(t)),
            Gate::Pdg(t) => Gate::Pdg(f(t)),
            Gate::Z(t) => Gate::Z(f(t)),
            Gate::Cnot { control, target } => Gate::Cnot {
                control: f(control),
                target: f(target),
            },
            Gate::Toffoli { c1, c2, target } => Gate::Toffoli {
                c1: f(c1),
                c2: f(c2),
                target: f(target),
            },
        }
    }

    /// Check operand range and distinctness against a circuit width.
    pub fn validate(&self, width: u32) -> Result<(), CircuitError> {
        let (ops, n) = self.operands();
        for &w in &ops[..n] {
            if w >= width {
                return Err(CircuitError::OperandOutOfRange { operand: w, width });
            }
        }
        let distinct = match n {
            1 => true,
            2 => ops[0] != ops[1],
            _ => ops[0] != ops[1] && ops[0] != ops[2] && ops[1] != ops[2],
        };
        if !distinct {
            return Err(CircuitError::DuplicateOperands(ops));
        }
        Ok(())
    }
}

/// A named contiguous block of wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub start: u32,
    pub len: u32,
}

impl Register {
    pub fn new(name: impl Into<String>, start: u32, len: u32) -> Self {
        Register {
            name: name.into(),
            start,
            len,
        }
    }

    /// Absolute wire index of bit `offset` within the register.
    pub fn wire(&self, offset: u32) -> u32 {
        debug_assert!(offset < self.len, "offset {offset} outside register");
        self.start + offset
    }

    pub fn end(&self) -> u32 {
        self.start + self.len
    }
}

/// An immutable ordered gate list over `width` wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    width: u32,
    registers: Vec<Register>,
    gates: Vec<Gate>,
}

impl Circuit {
    /// An empty circuit over `width` anonymous wires.
    pub fn empty(width: u32) -> Circuit {
        CircuitBuilder::new(width).finish()
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    /// Look up a register by name.
    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    /// Concatenate two equal-width circuits (this one first).
    ///
    /// Register names are taken from `self`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        if self.width != other.width {
            return Err(CircuitError::WidthMismatch {
                left: self.width,
                right: other.width,
            });
        }
        let mut gates = Vec::with_capacity(self.gates.len() + other.gates.len());
        gates.extend_from_slice(&self.gates);
        gates.extend_from_slice(&other.gates);
        Ok(Circuit {
            width: self.width,
            registers: self.registers.clone(),
            gates,
        })
    }

    /// The exact inverse circuit: gates reversed, each replaced by its inverse.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }
}

/// Incremental constructor for [`Circuit`].
///
/// `push` asserts well-formedness; feeding it an out-of-range or duplicated
/// operand is a programming error in the calling builder, not a recoverable
/// condition. Untrusted input goes through [`crate::textio::parse_circuit`],
/// which validates first.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    width: u32,
    registers: Vec<Register>,
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    /// A builder over `width` wires in a single register named `q`.
    pub fn new(width: u32) -> Self {
        let registers = if width == 0 {
            Vec::new()
        } else {
            vec![Register::new("q", 0, width)]
        };
        CircuitBuilder {
            width,
            registers,
            gates: Vec::new(),
        }
    }

    /// A builder whose wires are tiled exactly by `registers`.
    ///
    /// Registers must be non-empty, non-overlapping, and cover `0..width`
    /// with no gaps once sorted by start index.
    pub fn with_registers(registers: Vec<Register>) -> Result<Self, CircuitError> {
        let width: u32 = registers.iter().map(|r| r.len).sum();
        let mut sorted: Vec<&Register> = registers.iter().collect();
        sorted.sort_by_key(|r| r.start);
        let mut next = 0u32;
        for r in sorted {
            if r.len == 0 || r.start != next {
                return Err(CircuitError::BadRegisters { width });
            }
            next = r.end();
        }
        if next != width {
            return Err(CircuitError::BadRegisters { width });
        }
        Ok(CircuitBuilder {
            width,
            registers,
            gates: Vec::new(),
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Pre-allocate room for `additional` more gates (useful when the final
    /// gate count is known, to avoid growth copies on very large circuits).
    pub fn reserve(&mut self, additional: usize) {
        self.gates.reserve_exact(additional);
    }

    /// Append a gate. Panics on a malformed gate (see type-level docs).
    pub fn push(&mut self, gate: Gate) {
        if let Err(e) = gate.validate(self.width) {
            panic!("malformed gate {gate:?}: {e}");
        }
        self.gates.push(gate);
    }

    /// Append every gate of `circuit`, which must have the same width.
    pub fn extend_from(&mut self, circuit: &Circuit) {
        assert_eq!(
            self.width,
            circuit.width(),
            "cannot extend from a circuit of different width"
        );
        self.gates.extend_from_slice(circuit.gates());
    }

    pub fn finish(self) -> Circuit {
        Circuit {
            width: self.width,
            registers: self.registers,
            gates: self.gates,
        }
    }
}
