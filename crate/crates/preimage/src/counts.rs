//! Resource counting: per-kind gate tallies and as-soon-as-possible layering.
//!
//! Depth is defined by ASAP scheduling: a gate enters the earliest layer
//! strictly after the last prior gate touching any of its wires, with no gate
//! reordering. `t_depth` counts layers containing at least one T or T†;
//! `toffoli_stages` counts layers containing at least one Toffoli.

use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::error::CircuitError;

/// Gate tallies plus depth figures for one circuit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ResourceCounts {
    pub x: u64,
    pub cnot: u64,
    pub toffoli: u64,
    pub h: u64,
    pub t: u64,
    pub tdg: u64,
    pub p: u64,
    pub pdg: u64,
    pub z: u64,
    /// T plus T†.
    pub t_count: u64,
    pub total_gates: u64,
    /// Number of ASAP layers containing a T or T†.
    pub t_depth: u64,
    /// Total number of ASAP layers.
    pub total_depth: u64,
    /// Number of ASAP layers containing a Toffoli (pre-lowering notion).
    pub toffoli_stages: u64,
    pub width: u32,
}

impl ResourceCounts {
    /// Tally of Clifford gates other than Toffoli (CNOT + H + P + P† + Z + X).
    pub fn clifford_tally(&self) -> u64 {
        self.cnot + self.h + self.p + self.pdg + self.z + self.x
    }
}

/// Streaming fold that computes [`ResourceCounts`] one gate at a time.
///
/// Usable both for materialized [`Circuit`]s and for circuits too large to
/// hold in memory (the full Keccak permutation is fed through this gate by
/// gate).
#[derive(Debug, Clone)]
pub struct CountAccumulator {
    width: u32,
    counts: ResourceCounts,
    /// Per-wire index of the last layer touching that wire; 0 = untouched.
    /// Layers are 1-based.
    last_layer: Vec<u64>,
    /// `layer_flags[layer - 1]`: bit 0 = layer has T/T†, bit 1 = has Toffoli.
    layer_flags: Vec<u8>,
}

impl CountAccumulator {
    pub fn new(width: u32) -> Self {
        CountAccumulator {
            width,
            counts: ResourceCounts {
                width,
                ..ResourceCounts::default()
            },
            last_layer: vec![0; width as usize],
            layer_flags: Vec::new(),
        }
    }

    /// Fold one gate into the tallies and the layering state.
    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.validate(self.width)?;
        let (ops, n) = gate.operands();

        let mut layer = 0u64;
        for &w in &ops[..n] {
            layer = layer.max(self.last_layer[w as usize]);
        }
        let layer = layer + 1;
        for &w in &ops[..n] {
            self.last_layer[w as usize] = layer;
        }
        if self.layer_flags.len() < layer as usize {
            self.layer_flags.resize(layer as usize, 0);
        }

        let c = &mut self.counts;
        c.total_gates += 1;
        match gate {
            Gate::X(_) => c.x += 1,
            Gate::H(_) => c.h += 1,
            Gate::T(_) => c.t += 1,
            Gate::Tdg(_) => c.tdg += 1,
            Gate::P(_) => c.p += 1,
            Gate::Pdg(_) => c.pdg += 1,
            Gate::Z(_) => c.z += 1,
            Gate::Cnot { .. } => c.cnot += 1,
            Gate::Toffoli { .. } => c.toffoli += 1,
        }
        match gate {
            Gate::T(_) | Gate::Tdg(_) => self.layer_flags[layer as usize - 1] |= 1,
            Gate::Toffoli { .. } => self.layer_flags[layer as usize - 1] |= 2,
            _ => {}
        }
        Ok(())
    }

    pub fn finish(self) -> ResourceCounts {
        let mut c = self.counts;
        c.t_count = c.t + c.tdg;
        c.total_depth = self.layer_flags.len() as u64;
        c.t_depth = self.layer_flags.iter().filter(|&&f| f & 1 != 0).count() as u64;
        c.toffoli_stages = self.layer_flags.iter().filter(|&&f| f & 2 != 0).count() as u64;
        c
    }
}

/// Count a materialized circuit.
pub fn count_resources(circuit: &Circuit) -> Result<ResourceCounts, CircuitError> {
    let mut acc = CountAccumulator::new(circuit.width());
    for &g in circuit.gates() {
        acc.push(g)?;
    }
    Ok(acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;

    #[test]
    fn empty_circuit_counts_are_all_zero() {
        let c = Circuit::empty(4);
        let rc = count_resources(&c).unwrap();
        assert_eq!(
            rc,
            ResourceCounts {
                width: 4,
                ..ResourceCounts::default()
            }
        );
    }

    #[test]
    fn disjoint_cnots_share_one_layer() {
        let mut b = CircuitBuilder::new(4);
        b.push(Gate::Cnot {
            control: 0,
            target: 1,
        });
        b.push(Gate::Cnot {
            control: 2,
            target: 3,
        });
        let rc = count_resources(&b.finish()).unwrap();
        assert_eq!(rc.cnot, 2);
        assert_eq!(rc.total_depth, 1);
    }

    #[test]
    fn overlapping_gates_serialize_into_layers() {
        let mut b = CircuitBuilder::new(3);
        b.push(Gate::Cnot {
            control: 0,
            target: 1,
        });
        b.push(Gate::Cnot {
            control: 1,
            target: 2,
        });
        b.push(Gate::X(0));
        let rc = count_resources(&b.finish()).unwrap();
        // Second CNOT waits for the first; the X slots back into layer 2.
        assert_eq!(rc.total_depth, 2);
    }

    #[test]
    fn t_depth_counts_layers_not_gates() {
        let mut b = CircuitBuilder::new(3);
        b.push(Gate::T(0));
        b.push(Gate::T(1));
        b.push(Gate::Tdg(2));
        b.push(Gate::T(0));
        let rc = count_resources(&b.finish()).unwrap();
        assert_eq!(rc.t_count, 4);
        // Three parallel T gates form layer 1; the repeat on wire 0 is layer 2.
        assert_eq!(rc.t_depth, 2);
        assert_eq!(rc.total_depth, 2);
    }

    #[test]
    fn toffoli_stages_track_layers_with_toffolis() {
        let mut b = CircuitBuilder::new(6);
        b.push(Gate::Toffoli {
            c1: 0,
            c2: 1,
            target: 2,
        });
        b.push(Gate::Toffoli {
            c1: 3,
            c2: 4,
            target: 5,
        });
        b.push(Gate::Toffoli {
            c1: 0,
            c2: 1,
            target: 3,
        });
        let rc = count_resources(&b.finish()).unwrap();
        assert_eq!(rc.toffoli, 3);
        assert_eq!(rc.toffoli_stages, 2);
    }

    #[test]
    fn counting_is_deterministic() {
        let mut b = CircuitBuilder::new(5);
        for i in 0..4 {
            b.push(Gate::Toffoli {
                c1: i,
                c2: i + 1,
                target: (i + 2) % 5,
            });
            b.push(Gate::T(i));
        }
        let c = b.finish();
        assert_eq!(
            count_resources(&c).unwrap(),
            count_resources(&c).unwrap()
        );
    }

    #[test]
    fn compose_adds_t_counts() {
        let mut a = CircuitBuilder::new(2);
        a.push(Gate::T(0));
        a.push(Gate::Tdg(1));
        let a = a.finish();
        let mut b = CircuitBuilder::new(2);
        b.push(Gate::T(1));
        let b = b.finish();
        let ab = a.compose(&b).unwrap();
        let rc = count_resources(&ab).unwrap();
        assert_eq!(
            rc.t_count,
            count_resources(&a).unwrap().t_count + count_resources(&b).unwrap().t_count
        );
    }

    #[test]
    fn accumulator_rejects_malformed_gates() {
        let mut acc = CountAccumulator::new(2);
        assert!(acc.push(Gate::X(2)).is_err());
        assert!(acc
            .push(Gate::Cnot {
                control: 1,
                target: 1
            })
            .is_err());
    }
}
