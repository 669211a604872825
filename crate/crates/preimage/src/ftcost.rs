//! Fault-tolerant cost pipeline: Grover iteration counts, oracle and
//! iteration T-counts, magic-state distillation planning, surface-code
//! distance solving, and the end-to-end logical-qubit-cycle cost estimate.
//!
//! Large counts are exact arbitrary-precision integers; probabilities and
//! logarithms use double precision.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::counts::ResourceCounts;

/// Physical-layer error and timing parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams {
    /// Injection error probability of raw magic states.
    pub p_in: f64,
    /// Physical gate error probability.
    pub p_g: f64,
    /// Distillation balance parameter.
    pub epsilon: f64,
    /// Surface-code cycle time in seconds.
    pub t_sc: f64,
    /// Physical qubits per logical qubit, as a multiple of d^2.
    pub footprint_factor: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        let p_in = 1e-4;
        PhysicalParams {
            p_in,
            p_g: p_in / 10.0,
            epsilon: 1.0,
            t_sc: 2e-7,
            footprint_factor: 3.125,
        }
    }
}

impl PhysicalParams {
    fn validate(&self) -> Result<(), FtCostError> {
        if !(self.p_g > 0.0 && self.p_g <= self.p_in && self.p_in < 1.0) {
            return Err(FtCostError::InvalidParams(
                "need 0 < p_g <= p_in < 1",
            ));
        }
        if !(self.epsilon > 0.0) {
            return Err(FtCostError::InvalidParams("epsilon must be positive"));
        }
        if !(self.t_sc > 0.0) {
            return Err(FtCostError::InvalidParams("cycle time must be positive"));
        }
        if !(self.footprint_factor > 0.0) {
            return Err(FtCostError::InvalidParams(
                "footprint factor must be positive",
            ));
        }
        Ok(())
    }

    /// Physical qubits per logical qubit at code distance `d`.
    pub fn footprint_per_logical(&self, d: u32) -> u64 {
        (self.footprint_factor * (d as f64) * (d as f64)).ceil() as u64
    }
}

/// Inputs describing the Grover search instance: key size and the
/// per-invocation resources of the (optimized) hash circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroverParams {
    /// Pre-image bit length.
    pub k: u32,
    /// Resource counts of one hash-circuit invocation.
    pub hash_counts: ResourceCounts,
    /// Logical qubits occupied by the hash circuit.
    pub hash_logical_qubits: u64,
}

/// Optimized reference counts for one SHA-256 invocation, as produced by a
/// T-depth-optimizing compiler over the reversible build (in-place adders,
/// parallelized T layers). These drive the headline cost estimate.
pub fn sha256_reference_counts() -> GroverParams {
    GroverParams {
        k: 256,
        hash_counts: ResourceCounts {
            cnot: 4_209_072,
            h: 94_144,
            p: 72_976,
            z: 6_144,
            t_count: 228_992,
            t_depth: 70_400,
            width: 2402,
            ..Default::default()
        },
        hash_logical_qubits: 2402,
    }
}

/// Optimized reference counts for one SHA3-256 invocation (24-round
/// permutation with a shared temporary register). These drive the headline
/// cost estimate.
pub fn sha3_256_reference_counts() -> GroverParams {
    GroverParams {
        k: 256,
        hash_counts: ResourceCounts {
            cnot: 34_260_480,
            h: 168_960,
            p: 46_080,
            x: 85,
            t_count: 499_200,
            t_depth: 432,
            width: 3200,
            ..Default::default()
        },
        hash_logical_qubits: 3200,
    }
}

/// Error cases of the cost pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FtCostError {
    #[error("key size {0} is too small: the iteration T-count terms need k >= 4")]
    KeyTooSmall(u32),
    #[error("injection error rate {0} is at or above the 0.0125 suppression threshold")]
    ThresholdExceeded(f64),
    #[error("distillation does not converge: no distance up to {0} satisfies the layer inequality")]
    DistillationDiverged(u32),
    #[error("invalid parameter: {0}")]
    InvalidParams(&'static str),
}

const FRAC_BITS: u64 = 1536;
const SQRT_BITS: u64 = 768;
const D_MAX: u32 = 10_000;

/// arctan(1/x) in fixed point with `frac_bits` fractional bits, by the
/// alternating series.
fn atan_inv_fixed(x: u32, frac_bits: u64) -> BigInt {
    let x_big = BigInt::from(x);
    let xx = &x_big * &x_big;
    let mut term = (BigInt::one() << frac_bits) / &x_big;
    let mut sum = BigInt::zero();
    let mut n: u64 = 0;
    while !term.is_zero() {
        let t = &term / (2 * n + 1);
        if n % 2 == 0 {
            sum += &t;
        } else {
            sum -= &t;
        }
        term = &term / &xx;
        n += 1;
    }
    sum
}

/// floor((pi/4) * 2^FRAC_BITS), by the Machin formula
/// pi/4 = 4*arctan(1/5) - arctan(1/239).
fn pi_quarter_fixed() -> &'static BigUint {
    static PI_Q: OnceLock<BigUint> = OnceLock::new();
    PI_Q.get_or_init(|| {
        let v = atan_inv_fixed(5, FRAC_BITS) * BigInt::from(4) - atan_inv_fixed(239, FRAC_BITS);
        assert!(v.is_positive());
        v.to_biguint().unwrap()
    })
}

/// floor(sqrt(2) * 2^SQRT_BITS) via exact integer square root.
fn sqrt2_fixed() -> &'static BigUint {
    static SQRT2: OnceLock<BigUint> = OnceLock::new();
    SQRT2.get_or_init(|| (BigUint::from(2u8) << (2 * SQRT_BITS)).sqrt())
}

/// Number of Grover iterations for a k-bit search: floor(pi/4 * 2^(k/2)),
/// exactly (1536 fractional bits of pi leave enormous floor margin).
pub fn grover_iterations(k: u32) -> BigUint {
    let p = pi_quarter_fixed();
    if k % 2 == 0 {
        (p << (k / 2)) >> FRAC_BITS
    } else {
        ((p * sqrt2_fixed()) << (k / 2)) >> (FRAC_BITS + SQRT_BITS)
    }
}

/// T-counts of the phase oracle and of one full Grover iteration, given the
/// hash circuit's T-count: the oracle runs the hash forward and backward
/// plus a k-bit controlled comparison (32k - 84 T gates); the iteration
/// adds the diffusion step's (k-1)-bit variant.
pub fn oracle_and_iteration_tcount(k: u32, hash_t_count: u64) -> Result<(u64, u64), FtCostError> {
    if k < 4 {
        return Err(FtCostError::KeyTooSmall(k));
    }
    let t_oracle = 2 * hash_t_count + (32 * k as u64 - 84);
    let t_iteration = t_oracle + (32 * (k as u64 - 1) - 84);
    Ok((t_oracle, t_iteration))
}

/// A magic-state distillation pipeline: layer distances top to bottom with
/// per-layer footprints and cycle counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistillationPlan {
    /// Code distance per layer, top (output) to bottom (injection).
    pub distances: Vec<u32>,
    /// Raw input states consumed per distilled state: 16 * 15^(layers-1).
    pub input_states: u64,
    /// Logical qubits held by each layer.
    pub layer_logical: Vec<u64>,
    /// Physical qubits per logical qubit at each layer's distance.
    pub layer_physical_per_logical: Vec<u64>,
    /// Physical qubits of each layer.
    pub layer_physical: Vec<u64>,
    /// Surface-code cycles spent in each layer: 10 * d.
    pub layer_cycles: Vec<u64>,
    /// Total cycles through the pipeline.
    pub total_cycles: u64,
    /// States the pipeline keeps in flight: bottom-layer physical footprint
    /// over the next layer's, floored (at least 1).
    pub parallelism: u64,
}

impl DistillationPlan {
    /// A plan with no distillation layers (injection error already
    /// sufficient).
    pub fn empty() -> Self {
        DistillationPlan {
            distances: Vec::new(),
            input_states: 0,
            layer_logical: Vec::new(),
            layer_physical_per_logical: Vec::new(),
            layer_physical: Vec::new(),
            layer_cycles: Vec::new(),
            total_cycles: 0,
            parallelism: 1,
        }
    }

    pub fn n_layers(&self) -> usize {
        self.distances.len()
    }

    /// Physical qubits of the bottom (largest) layer; zero when empty.
    pub fn bottom_physical(&self) -> u64 {
        self.layer_physical.last().copied().unwrap_or(0)
    }
}

/// Minimal distance d >= 3 with 192*d*(100 p_g)^floor((d+1)/2) below the
/// layer's error share eps*p/(1+eps), compared in the log domain.
fn distillation_distance(pp: &PhysicalParams, p: f64) -> Result<u32, FtCostError> {
    let share_ln = (pp.epsilon * p / (1.0 + pp.epsilon)).ln();
    let base_ln = (100.0 * pp.p_g).ln();
    for d in 3..=D_MAX {
        let exponent = ((d + 1) / 2) as f64;
        if (192.0 * d as f64).ln() + exponent * base_ln < share_ln {
            return Ok(d);
        }
    }
    Err(FtCostError::DistillationDiverged(D_MAX))
}

/// Plan the distillation pipeline for a target output error `p_out`.
///
/// Starting from the target, each layer takes the minimal distance meeting
/// its error share, then the requirement relaxes by the cube-root rule
/// p <- cbrt(p / (35 (1+eps))) until raw injection at `p_in` suffices.
/// `p_out >= p_in` needs no distillation and yields the empty plan.
pub fn plan_distillation(pp: &PhysicalParams, p_out: f64) -> Result<DistillationPlan, FtCostError> {
    pp.validate()?;
    if !(p_out > 0.0) {
        return Err(FtCostError::InvalidParams("p_out must be positive"));
    }
    if p_out >= pp.p_in {
        return Ok(DistillationPlan::empty());
    }

    let mut distances = Vec::new();
    let mut p = p_out;
    loop {
        distances.push(distillation_distance(pp, p)?);
        p = (p / (35.0 * (1.0 + pp.epsilon))).cbrt();
        if p > pp.p_in {
            break;
        }
    }

    let m = distances.len();
    let layer_logical: Vec<u64> = (0..m).map(|j| 16 * 15u64.pow(j as u32)).collect();
    let layer_physical_per_logical: Vec<u64> = distances
        .iter()
        .map(|&d| pp.footprint_per_logical(d))
        .collect();
    let layer_physical: Vec<u64> = layer_logical
        .iter()
        .zip(&layer_physical_per_logical)
        .map(|(&l, &f)| l * f)
        .collect();
    let layer_cycles: Vec<u64> = distances.iter().map(|&d| 10 * d as u64).collect();
    let total_cycles = layer_cycles.iter().sum();
    let parallelism = if m >= 2 {
        (layer_physical[m - 1] / layer_physical[m - 2]).max(1)
    } else {
        1
    };

    Ok(DistillationPlan {
        input_states: layer_logical[m - 1],
        distances,
        layer_logical,
        layer_physical_per_logical,
        layer_physical,
        layer_cycles,
        total_cycles,
        parallelism,
    })
}

/// Minimal code distance d >= 3 with (p_in/0.0125)^((d+1)/2) below the
/// error budget. The exponent is the exact real (d+1)/2; the parity of d
/// is unrestricted.
pub fn code_distance(error_budget: f64, p_in: f64) -> Result<u32, FtCostError> {
    if !(error_budget > 0.0 && error_budget < 1.0) {
        return Err(FtCostError::InvalidParams(
            "error budget must be in (0, 1)",
        ));
    }
    if p_in >= 0.0125 {
        return Err(FtCostError::ThresholdExceeded(p_in));
    }
    let ratio_ln = (p_in / 0.0125).ln();
    let budget_ln = error_budget.ln();
    for d in 3..=D_MAX {
        if (d + 1) as f64 / 2.0 * ratio_ln < budget_ln {
            return Ok(d);
        }
    }
    Err(FtCostError::DistillationDiverged(D_MAX))
}

fn ser_biguint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Full cost report of one fault-tolerant Grover attack.
#[derive(Debug, Clone, Serialize)]
pub struct CostReport {
    // Input echo.
    pub k: u32,
    pub n_hash: u64,
    pub p_in: f64,
    pub p_g: f64,
    pub epsilon: f64,
    pub t_sc_seconds: f64,
    pub hash_t_count: u64,
    pub hash_t_depth: u64,
    pub hash_clifford_tally: u64,
    // Iteration structure.
    #[serde(serialize_with = "ser_biguint")]
    pub grover_iterations: BigUint,
    pub log2_grover_iterations: f64,
    /// T-count of the phase oracle (hash, comparison, inverse hash).
    pub t_count_oracle: u64,
    /// T-count of one full Grover iteration.
    pub t_count_iteration: u64,
    /// T-count of the whole attack.
    #[serde(serialize_with = "ser_biguint")]
    pub t_count_total: BigUint,
    pub log2_t_count_total: f64,
    /// T-depth of the whole attack (two hash T-depths per iteration).
    #[serde(serialize_with = "ser_biguint")]
    pub t_depth_total: BigUint,
    pub log2_t_depth_total: f64,
    /// Average T gates per T layer.
    pub t_width: f64,
    // Error budgets.
    pub p_out: f64,
    pub clifford_per_iteration: u64,
    #[serde(serialize_with = "ser_biguint")]
    pub clifford_total: BigUint,
    pub clifford_error_budget: f64,
    // Code and factory layout.
    pub code_distance: u32,
    pub distillation: DistillationPlan,
    /// Distillation pipelines running in parallel.
    pub distilleries: u64,
    /// Expected Clifford cycles per logical qubit per T layer.
    pub clifford_cycles_per_t_layer: f64,
    /// Whether magic-state production dominates the cycle count.
    pub t_limited: bool,
    // Cycle and cost totals.
    #[serde(serialize_with = "ser_biguint")]
    pub cycles_total: BigUint,
    pub log2_cycles_total: Option<f64>,
    pub physical_qubits_algorithm: u64,
    pub physical_qubits_factories: u64,
    pub physical_qubits_total: u64,
    /// Logical-qubit-cycles of the whole attack.
    #[serde(serialize_with = "ser_biguint")]
    pub total_cost: BigUint,
    pub log2_total_cost: Option<f64>,
    pub overhead_v: Option<f64>,
    /// Wall-clock seconds to distill all magic states.
    pub t_dist_seconds: f64,
}

/// log2 of an exact integer via its top 53 bits; None for zero.
pub fn log2_biguint(x: &BigUint) -> Option<f64> {
    if x.is_zero() {
        return None;
    }
    let bits = x.bits();
    if bits <= 53 {
        return Some((x.to_u64().unwrap() as f64).log2());
    }
    let top = (x >> (bits - 53)).to_u64().unwrap();
    Some((bits - 53) as f64 + (top as f64).log2())
}

fn log2_or_zero(x: &BigUint) -> f64 {
    log2_biguint(x).unwrap_or(0.0)
}

/// Run the full cost pipeline.
pub fn estimate_attack(gp: &GroverParams, pp: &PhysicalParams) -> Result<CostReport, FtCostError> {
    pp.validate()?;
    if gp.hash_counts.t_depth == 0 {
        return Err(FtCostError::InvalidParams("hash T-depth must be positive"));
    }
    if gp.hash_logical_qubits == 0 {
        return Err(FtCostError::InvalidParams("hash width must be positive"));
    }

    let iterations = grover_iterations(gp.k);
    let (t_count_oracle, t_count_iteration) =
        oracle_and_iteration_tcount(gp.k, gp.hash_counts.t_count)?;
    let t_count_total = &iterations * t_count_iteration;

    // Per-state error target so the whole attack has O(1) T-failure odds.
    let p_out = 1.0 / t_count_total.to_f64().unwrap_or(f64::INFINITY);
    let distillation = plan_distillation(pp, p_out)?;

    let hash_clifford_tally = gp.hash_counts.clifford_tally();
    let clifford_per_iteration = 2 * hash_clifford_tally;
    let clifford_total = &iterations * clifford_per_iteration;
    let clifford_error_budget = 1.0 / clifford_total.to_f64().unwrap_or(f64::INFINITY);
    let code_d = code_distance(clifford_error_budget, pp.p_in)?;

    // Two hash T-depths per iteration (compute and uncompute).
    let t_depth_iteration = 2 * gp.hash_counts.t_depth;
    let t_depth_total = &iterations * t_depth_iteration;
    let t_width = t_count_iteration as f64 / t_depth_iteration as f64;

    // Distilleries needed to keep up with T consumption, as the exact
    // ceiling of (T-count / T-depth) / parallelism; the iteration count
    // cancels in the ratio.
    let denom = BigUint::from(t_depth_iteration) * distillation.parallelism;
    let distilleries = BigUint::from(t_count_iteration)
        .div_ceil(&denom)
        .to_u64()
        .expect("distillery count fits u64");

    // Expected Clifford work per logical qubit per T layer: H gates cost a
    // d-cycle stretch, other Cliffords two cycles.
    let denom = (gp.hash_logical_qubits * t_depth_iteration) as f64;
    let clifford_ratio = clifford_per_iteration as f64 / denom;
    let frac_h = if hash_clifford_tally > 0 {
        gp.hash_counts.h as f64 / hash_clifford_tally as f64
    } else {
        0.0
    };
    let clifford_cycles_per_t_layer =
        clifford_ratio * (frac_h * code_d as f64 + (1.0 - frac_h) * 2.0);
    let t_limited = clifford_cycles_per_t_layer < distillation.total_cycles as f64;

    let cycles_total = &iterations * (distillation.total_cycles * t_depth_iteration);
    let physical_qubits_algorithm = gp.hash_logical_qubits * pp.footprint_per_logical(code_d);
    let physical_qubits_factories = distilleries * distillation.bottom_physical();
    let total_cost =
        (gp.hash_logical_qubits + distilleries * distillation.input_states) * &cycles_total;

    let log2_total_cost = log2_biguint(&total_cost);
    let overhead_v = log2_total_cost
        .map(|c| crate::search::overhead_v(c, gp.k as f64));

    // Wall time to distill every magic state, over all pipelines.
    let t_dist_seconds = t_count_total.to_f64().unwrap_or(f64::INFINITY)
        / (distillation.parallelism * distilleries) as f64
        * distillation.total_cycles as f64
        * pp.t_sc;

    Ok(CostReport {
        k: gp.k,
        n_hash: gp.hash_logical_qubits,
        p_in: pp.p_in,
        p_g: pp.p_g,
        epsilon: pp.epsilon,
        t_sc_seconds: pp.t_sc,
        hash_t_count: gp.hash_counts.t_count,
        hash_t_depth: gp.hash_counts.t_depth,
        hash_clifford_tally,
        log2_grover_iterations: log2_or_zero(&iterations),
        t_count_oracle,
        t_count_iteration,
        log2_t_count_total: log2_or_zero(&t_count_total),
        log2_t_depth_total: log2_or_zero(&t_depth_total),
        t_width,
        p_out,
        clifford_per_iteration,
        clifford_error_budget,
        code_distance: code_d,
        distilleries,
        clifford_cycles_per_t_layer,
        t_limited,
        log2_cycles_total: log2_biguint(&cycles_total),
        physical_qubits_algorithm,
        physical_qubits_factories,
        physical_qubits_total: physical_qubits_algorithm + physical_qubits_factories,
        log2_total_cost,
        overhead_v,
        t_dist_seconds,
        grover_iterations: iterations,
        t_count_total,
        t_depth_total,
        clifford_total,
        distillation,
        cycles_total,
        total_cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn big(s: &str) -> BigUint {
        BigUint::from_str(s).unwrap()
    }

    #[test]
    fn grover_iterations_small_values() {
        assert_eq!(grover_iterations(0), BigUint::zero());
        assert_eq!(grover_iterations(4), BigUint::from(3u8));
        assert_eq!(grover_iterations(7), BigUint::from(8u8));
        assert_eq!(grover_iterations(16), BigUint::from(201u8));
    }

    #[test]
    fn grover_iterations_256_is_frozen() {
        let i = grover_iterations(256);
        assert_eq!(i, big("267257146016241686964920093290467695825"));
        let l = log2_biguint(&i).unwrap();
        assert!((l - 127.651496).abs() < 1e-5, "{l}");
        assert_eq!(
            grover_iterations(255),
            big("188979340268647791955539177790574124291")
        );
    }

    #[test]
    fn tcount_formula_examples() {
        assert_eq!(
            oracle_and_iteration_tcount(256, 228_992).unwrap(),
            (466_092, 474_168)
        );
        assert_eq!(
            oracle_and_iteration_tcount(256, 499_200).unwrap(),
            (1_006_508, 1_014_584)
        );
        assert_eq!(oracle_and_iteration_tcount(256, 0).unwrap(), (8108, 16184));
        assert_eq!(
            oracle_and_iteration_tcount(3, 100),
            Err(FtCostError::KeyTooSmall(3))
        );
        // Smallest valid key size: both linear terms nonnegative.
        let (ug, g) = oracle_and_iteration_tcount(4, 7).unwrap();
        assert_eq!((ug, g), (58, 70));
    }

    #[test]
    fn distillation_plan_headline_case() {
        let pp = PhysicalParams::default();
        let plan = plan_distillation(&pp, 7.89e-45).unwrap();
        assert_eq!(plan.distances, vec![33, 13, 7]);
        assert_eq!(plan.input_states, 3600);
        assert_eq!(plan.layer_logical, vec![16, 240, 3600]);
        assert_eq!(plan.layer_physical_per_logical, vec![3404, 529, 154]);
        assert_eq!(plan.layer_physical, vec![54_464, 126_960, 554_400]);
        assert_eq!(plan.layer_cycles, vec![330, 130, 70]);
        assert_eq!(plan.total_cycles, 530);
        assert_eq!(plan.parallelism, 4);
        assert_eq!(plan.bottom_physical(), 554_400);
        assert_eq!(plan.n_layers(), 3);
    }

    #[test]
    fn distillation_plan_same_for_smaller_target() {
        let pp = PhysicalParams::default();
        let plan = plan_distillation(&pp, 3.688e-45).unwrap();
        assert_eq!(plan.distances, vec![33, 13, 7]);
    }

    #[test]
    fn distillation_single_layer_case() {
        let pp = PhysicalParams::default();
        let plan = plan_distillation(&pp, 0.9e-4).unwrap();
        assert_eq!(plan.distances, vec![5]);
        assert_eq!(plan.input_states, 16);
        assert_eq!(plan.total_cycles, 50);
        assert_eq!(plan.parallelism, 1);
    }

    #[test]
    fn distillation_empty_when_injection_suffices() {
        let pp = PhysicalParams::default();
        let plan = plan_distillation(&pp, 2e-4).unwrap();
        assert_eq!(plan, DistillationPlan::empty());
        assert_eq!(plan.parallelism, 1);
    }

    #[test]
    fn distillation_diverges_at_threshold_gate_error() {
        let pp = PhysicalParams {
            p_g: 0.011,
            p_in: 0.011,
            ..Default::default()
        };
        assert_eq!(
            plan_distillation(&pp, 1e-30),
            Err(FtCostError::DistillationDiverged(D_MAX))
        );
    }

    #[test]
    fn distillation_layer_minimality() {
        // Layer distances satisfy the inequality while one less does not.
        let pp = PhysicalParams::default();
        let plan = plan_distillation(&pp, 7.89e-45).unwrap();
        let mut p = 7.89e-45;
        for &d in &plan.distances {
            let share = pp.epsilon * p / (1.0 + pp.epsilon);
            let holds = |d: u32| {
                (192.0 * d as f64).ln() + ((d + 1) / 2) as f64 * (100.0 * pp.p_g).ln()
                    < share.ln()
            };
            assert!(holds(d));
            assert!(!holds(d - 1), "distance {d} is not minimal");
            p = (p / (35.0 * (1.0 + pp.epsilon))).cbrt();
        }
    }

    #[test]
    fn code_distance_frozen_values() {
        assert_eq!(code_distance(4.27e-46, 1e-4).unwrap(), 43);
        assert_eq!(code_distance(5.43e-47, 1e-4).unwrap(), 44);
    }

    #[test]
    fn code_distance_boundary_behaviour() {
        // Just below the d=43 suppression value the strict inequality
        // fails and the next distance is needed; just above it d=43
        // suffices. (The exact boundary itself sits below f64 resolution.)
        let boundary = 0.008f64.powi(22);
        assert_eq!(code_distance(boundary * (1.0 - 1e-6), 1e-4).unwrap(), 44);
        assert_eq!(code_distance(boundary * (1.0 + 1e-6), 1e-4).unwrap(), 43);
    }

    #[test]
    fn code_distance_rejects_threshold() {
        assert_eq!(
            code_distance(1e-10, 0.0125),
            Err(FtCostError::ThresholdExceeded(0.0125))
        );
        assert!(code_distance(1e-10, 0.012).is_ok());
    }

    #[test]
    fn code_distance_monotone_in_budget() {
        let budgets = [1e-50, 1e-40, 1e-30, 1e-20, 1e-10, 1e-4];
        let mut last = u32::MAX;
        for b in budgets {
            let d = code_distance(b, 1e-4).unwrap();
            assert!(d <= last, "budget {b} gave {d} after {last}");
            last = d;
        }
    }

    #[test]
    fn estimate_sha256_headline() {
        let report = estimate_attack(&sha256_reference_counts(), &PhysicalParams::default()).unwrap();
        assert_eq!(report.t_count_oracle, 466_092);
        assert_eq!(report.t_count_iteration, 474_168);
        assert_eq!(report.code_distance, 43);
        assert_eq!(report.distilleries, 1);
        assert_eq!(report.distillation.distances, vec![33, 13, 7]);
        assert_eq!(report.clifford_per_iteration, 8_764_672);
        assert!((report.p_out / 7.8913e-45 - 1.0).abs() < 1e-3, "{}", report.p_out);
        assert!((report.t_width - 3.3677).abs() < 1e-3);
        assert!((report.log2_cycles_total.unwrap() - 153.804632).abs() < 1e-4);
        assert!((report.log2_total_cost.unwrap() - 166.355860).abs() < 1e-4);
        assert!((report.overhead_v.unwrap() - 4.794483).abs() < 1e-4);
        assert_eq!(report.physical_qubits_algorithm, 13_881_158);
        assert_eq!(report.physical_qubits_factories, 554_400);
        assert!((report.t_dist_seconds / 3.358e39 - 1.0).abs() < 1e-3);
        assert!((report.clifford_cycles_per_t_layer - 0.0747).abs() < 5e-4);
        assert!(report.t_limited);
    }

    #[test]
    fn estimate_sha3_headline() {
        let report = estimate_attack(&sha3_256_reference_counts(), &PhysicalParams::default()).unwrap();
        assert_eq!(report.t_count_oracle, 1_006_508);
        assert_eq!(report.t_count_iteration, 1_014_584);
        assert_eq!(report.code_distance, 44);
        assert_eq!(report.distilleries, 294);
        assert_eq!(report.clifford_per_iteration, 68_951_210);
        assert!((report.t_width - 1174.29).abs() < 0.01);
        assert!((report.log2_cycles_total.unwrap() - 146.456232).abs() < 1e-4);
        assert!((report.log2_total_cost.unwrap() - 166.474041).abs() < 1e-4);
        assert!((report.overhead_v.unwrap() - 4.809255).abs() < 1e-4);
        assert_eq!(report.physical_qubits_algorithm, 19_360_000);
        assert_eq!(report.physical_qubits_factories, 162_993_600);
        assert!((report.t_dist_seconds / 2.4441e37 - 1.0).abs() < 1e-3);
        assert!((report.clifford_cycles_per_t_layer - 55.01).abs() < 0.05);
        assert!(report.t_limited);
    }

    #[test]
    fn estimate_toy_hash_identities() {
        let gp = GroverParams {
            k: 4,
            hash_counts: ResourceCounts {
                cnot: 1,
                t_count: 7,
                t_depth: 3,
                width: 4,
                ..Default::default()
            },
            hash_logical_qubits: 4,
        };
        let report = estimate_attack(&gp, &PhysicalParams::default()).unwrap();
        assert_eq!(report.grover_iterations, BigUint::from(3u8));
        assert_eq!(report.t_count_iteration, 70);
        assert_eq!(report.t_count_total, BigUint::from(210u8));
        // Injection error already beats 1/210.
        assert_eq!(report.distillation, DistillationPlan::empty());
        assert_eq!(report.cycles_total, BigUint::zero());
        assert_eq!(report.total_cost, BigUint::zero());
        assert!(report.log2_total_cost.is_none());
        assert!(report.overhead_v.is_none());
        assert!(!report.t_limited, "no cycles are spent distilling");
        assert_eq!(report.t_dist_seconds, 0.0);
    }

    #[test]
    fn estimate_internal_identities_hold_exactly() {
        let report = estimate_attack(&sha256_reference_counts(), &PhysicalParams::default()).unwrap();
        assert_eq!(
            report.t_count_total,
            &report.grover_iterations * report.t_count_iteration
        );
        assert_eq!(
            report.t_depth_total,
            &report.grover_iterations * (2 * report.hash_t_depth)
        );
        assert_eq!(
            report.cycles_total,
            &report.grover_iterations
                * (report.distillation.total_cycles * 2 * report.hash_t_depth)
        );
        assert_eq!(
            report.total_cost,
            (report.n_hash + report.distilleries * report.distillation.input_states)
                * &report.cycles_total
        );
        assert_eq!(
            report.physical_qubits_total,
            report.physical_qubits_algorithm + report.physical_qubits_factories
        );
    }

    #[test]
    fn report_serializes_with_stable_field_names() {
        let report = estimate_attack(&sha256_reference_counts(), &PhysicalParams::default()).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["k"], 256);
        assert_eq!(json["code_distance"], 43);
        assert_eq!(json["t_count_iteration"], 474_168);
        assert_eq!(
            json["grover_iterations"],
            "267257146016241686964920093290467695825"
        );
        assert_eq!(json["distillation"]["distances"][0], 33);
        assert_eq!(json["distilleries"], 1);
    }

    #[test]
    fn log2_biguint_values() {
        assert_eq!(log2_biguint(&BigUint::zero()), None);
        assert_eq!(log2_biguint(&BigUint::from(1u8)), Some(0.0));
        assert_eq!(log2_biguint(&BigUint::from(1024u32)), Some(10.0));
        let big_pow = BigUint::from(1u8) << 200;
        assert_eq!(log2_biguint(&big_pow), Some(200.0));
        let l = log2_biguint(&(BigUint::from(3u8) << 200)).unwrap();
        assert!((l - (200.0 + 3f64.log2())).abs() < 1e-9);
    }
}
