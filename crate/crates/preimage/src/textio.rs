//! Plain-text netlist format, compatible with common reversible-circuit
//! toolchains.
//!
//! Layout: a `.v` header listing wire names, optional `.i`/`.o` lines, then
//! the gate body between `BEGIN` and `END`, one gate per line:
//!
//! ```text
//! .v a_0 a_1 b_0
//! BEGIN
//! tof a_0 b_0
//! tof a_0 a_1 b_0
//! H a_0
//! T* a_1
//! END
//! ```
//!
//! `tof` with 1/2/3 operands encodes X/CNOT/Toffoli (target last); the
//! one-wire mnemonics are `H`, `T`, `T*`, `P`, `P*`, `Z`. Mnemonics are
//! case-sensitive; wire names are arbitrary whitespace-free tokens.

use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::circuit::{Circuit, CircuitBuilder, Gate, Register};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("missing .v wire declaration")]
    MissingHeader,
    #[error("line {line}: duplicate wire name {name:?}")]
    DuplicateWire { line: usize, name: String },
    #[error("line {line}: unknown gate mnemonic {mnemonic:?}")]
    UnknownGate { line: usize, mnemonic: String },
    #[error("line {line}: unknown wire {name:?}")]
    UnknownWire { line: usize, name: String },
    #[error("line {line}: {mnemonic} takes {expected} operand(s), got {got}")]
    OperandCount {
        line: usize,
        mnemonic: String,
        expected: &'static str,
        got: usize,
    },
    #[error("line {line}: operands must be pairwise distinct")]
    DuplicateOperand { line: usize },
    #[error("gate found outside BEGIN/END body at line {line}")]
    GateOutsideBody { line: usize },
    #[error("missing END terminator")]
    MissingEnd,
}

/// Derive the exported name of wire `i` from the circuit's registers.
///
/// A wire in register `r` at offset `k` is named `r_k`; a single register
/// named `q` covering everything yields `q_0`, `q_1`, ….
fn wire_names(circuit: &Circuit) -> Vec<String> {
    let mut names = vec![String::new(); circuit.width() as usize];
    for reg in circuit.registers() {
        for off in 0..reg.len {
            names[reg.wire(off) as usize] = format!("{}_{}", reg.name, off);
        }
    }
    names
}

fn write_gate<W: Write>(w: &mut W, gate: Gate, names: &[String]) -> io::Result<()> {
    let n = |i: u32| &names[i as usize];
    match gate {
        Gate::X(t) => writeln!(w, "tof {}", n(t)),
        Gate::Cnot { control, target } => writeln!(w, "tof {} {}", n(control), n(target)),
        Gate::Toffoli { c1, c2, target } => {
            writeln!(w, "tof {} {} {}", n(c1), n(c2), n(target))
        }
        Gate::H(t) => writeln!(w, "H {}", n(t)),
        Gate::T(t) => writeln!(w, "T {}", n(t)),
        Gate::Tdg(t) => writeln!(w, "T* {}", n(t)),
        Gate::P(t) => writeln!(w, "P {}", n(t)),
        Gate::Pdg(t) => writeln!(w, "P* {}", n(t)),
        Gate::Z(t) => writeln!(w, "Z {}", n(t)),
    }
}

/// Write a materialized circuit.
pub fn write_circuit<W: Write>(w: &mut W, circuit: &Circuit) -> io::Result<()> {
    let names = wire_names(circuit);
    write_header(w, &names)?;
    for &g in circuit.gates() {
        write_gate(w, g, &names)?;
    }
    writeln!(w, "END")
}

fn write_header<W: Write>(w: &mut W, names: &[String]) -> io::Result<()> {
    write!(w, ".v")?;
    for name in names {
        write!(w, " {name}")?;
    }
    writeln!(w)?;
    writeln!(w, "BEGIN")
}

/// Streaming writer for circuits produced gate-by-gate (the full Keccak
/// permutation does not fit comfortably in memory as text source).
pub struct StreamWriter<W: Write> {
    w: W,
    names: Vec<String>,
}

impl<W: Write> StreamWriter<W> {
    /// Write the header for a circuit shaped like `registers` (which must
    /// tile the width, as in [`CircuitBuilder::with_registers`]).
    pub fn new(mut w: W, registers: &[Register]) -> io::Result<Self> {
        let width: u32 = registers.iter().map(|r| r.len).sum();
        let mut names = vec![String::new(); width as usize];
        for reg in registers {
            for off in 0..reg.len {
                names[reg.wire(off) as usize] = format!("{}_{}", reg.name, off);
            }
        }
        write_header(&mut w, &names)?;
        Ok(StreamWriter { w, names })
    }

    pub fn gate(&mut self, gate: Gate) -> io::Result<()> {
        write_gate(&mut self.w, gate, &self.names)
    }

    pub fn finish(mut self) -> io::Result<W> {
        writeln!(self.w, "END")?;
        Ok(self.w)
    }
}

/// Parse a circuit from text. The result has a single register `q`; wire
/// indices follow `.v` declaration order.
pub fn parse_circuit<R: BufRead>(r: R) -> Result<Circuit, ParseError> {
    let mut wires: HashMap<String, u32> = HashMap::new();
    let mut builder: Option<CircuitBuilder> = None;
    let mut in_body = false;
    let mut ended = false;

    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || ended {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().expect("non-empty line has a token");

        if head == ".v" {
            for name in tokens {
                let next = wires.len() as u32;
                if wires.insert(name.to_string(), next).is_some() {
                    return Err(ParseError::DuplicateWire {
                        line: lineno,
                        name: name.to_string(),
                    });
                }
            }
            builder = Some(CircuitBuilder::new(wires.len() as u32));
            continue;
        }
        if head.starts_with('.') {
            // Auxiliary declarations (.i, .o, .c, …) carry no gate content.
            continue;
        }
        if head == "BEGIN" {
            if builder.is_none() {
                return Err(ParseError::MissingHeader);
            }
            in_body = true;
            continue;
        }
        if head == "END" {
            ended = true;
            continue;
        }

        if !in_body {
            return Err(ParseError::GateOutsideBody { line: lineno });
        }
        let builder_ref = builder.as_mut().expect("body implies header");
        let ops: Vec<u32> = tokens
            .map(|name| {
                wires
                    .get(name)
                    .copied()
                    .ok_or_else(|| ParseError::UnknownWire {
                        line: lineno,
                        name: name.to_string(),
                    })
            })
            .collect::<Result<_, _>>()?;
        let count_err = |expected: &'static str| ParseError::OperandCount {
            line: lineno,
            mnemonic: head.to_string(),
            expected,
            got: ops.len(),
        };
        let gate = match head {
            "tof" => match ops.len() {
                1 => Gate::X(ops[0]),
                2 => Gate::Cnot {
                    control: ops[0],
                    target: ops[1],
                },
                3 => Gate::Toffoli {
                    c1: ops[0],
                    c2: ops[1],
                    target: ops[2],
                },
                _ => return Err(count_err("1-3")),
            },
            "H" | "T" | "T*" | "P" | "P*" | "Z" => {
                if ops.len() != 1 {
                    return Err(count_err("1"));
                }
                match head {
                    "H" => Gate::H(ops[0]),
                    "T" => Gate::T(ops[0]),
                    "T*" => Gate::Tdg(ops[0]),
                    "P" => Gate::P(ops[0]),
                    "P*" => Gate::Pdg(ops[0]),
                    _ => Gate::Z(ops[0]),
                }
            }
            _ => {
                return Err(ParseError::UnknownGate {
                    line: lineno,
                    mnemonic: head.to_string(),
                })
            }
        };
        if gate.validate(builder_ref.width()).is_err() {
            return Err(ParseError::DuplicateOperand { line: lineno });
        }
        builder_ref.push(gate);
    }

    if !ended {
        return Err(ParseError::MissingEnd);
    }
    Ok(builder.ok_or(ParseError::MissingHeader)?.finish())
}
