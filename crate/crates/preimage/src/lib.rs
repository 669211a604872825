//! Reversible circuit construction and fault-tolerant cost estimation for
//! pre-image search over SHA-256 and SHA3-256.
//!
//! The crate is organised as a small compiler pipeline plus an analysis layer:
//!
//! * [`circuit`] — the gate-level IR shared by every stage.
//! * [`counts`] — resource tallies and as-soon-as-possible depth layering.
//! * [`sim`] — classical bit-level execution of X/CNOT/Toffoli circuits.
//! * [`textio`] — plain-text netlist export/import.
//! * [`lower`] — Toffoli to Clifford+T expansion.
//! * [`sha256`] / [`keccak`] — reversible hash circuit builders with
//!   software reference implementations used as verification oracles.
//! * [`search`] — search-advantage mathematics (Lambert W, crossover points,
//!   parallel trade-offs).
//! * [`ftcost`] — surface-code cost pipeline: magic-state distillation
//!   planning, code distances, cycle counts, and the final report.

pub mod circuit;
pub mod counts;
pub mod error;
pub mod ftcost;
pub mod keccak;
pub mod lower;
pub mod search;
pub mod sha256;
pub mod sim;
pub mod textio;

pub use circuit::{Circuit, CircuitBuilder, Gate, Register};
pub use counts::{count_resources, CountAccumulator, ResourceCounts};
pub use error::CircuitError;
