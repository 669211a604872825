//! Randomized property suites: minimality of distance searches, circuit
//! inverse round-trips, lowering count identities, and tally additivity.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};

use preimage::counts::count_resources;
use preimage::ftcost::{code_distance, plan_distillation, PhysicalParams};
use preimage::lower;
use preimage::search;
use preimage::sim;
use preimage::{Circuit, CircuitBuilder, Gate};

/// Strategy for one classical gate on `width` wires with distinct operands.
fn classical_gate(width: u32) -> impl Strategy<Value = Gate> {
    let t = 0..width;
    prop_oneof![
        t.clone().prop_map(Gate::X),
        (t.clone(), 1..width).prop_map(move |(t, o)| Gate::Cnot {
            control: (t + o) % width,
            target: t,
        }),
        (t, 1..width, 1..width - 1).prop_map(move |(t, o1, o2)| {
            // Map o2 past o1 so the two control offsets differ.
            let o2 = if o2 >= o1 { o2 + 1 } else { o2 };
            Gate::Toffoli {
                c1: (t + o1) % width,
                c2: (t + o2) % width,
                target: t,
            }
        }),
    ]
}

/// Strategy for one gate drawn from the full alphabet.
fn mixed_gate(width: u32) -> impl Strategy<Value = Gate> {
    let t = 0..width;
    prop_oneof![
        classical_gate(width),
        classical_gate(width),
        t.clone().prop_map(Gate::H),
        t.clone().prop_map(Gate::T),
        t.clone().prop_map(Gate::Tdg),
        t.clone().prop_map(Gate::P),
        t.clone().prop_map(Gate::Pdg),
        t.prop_map(Gate::Z),
    ]
}

/// Width plus a gate list over that width.
fn sized_circuit(
    gate: fn(u32) -> BoxedStrategy<Gate>,
    max_gates: usize,
) -> impl Strategy<Value = (u32, Vec<Gate>)> {
    (4u32..24).prop_flat_map(move |w| {
        (Just(w), prop::collection::vec(gate(w), 1..max_gates))
    })
}

fn build(width: u32, gates: &[Gate]) -> Circuit {
    let mut b = CircuitBuilder::new(width);
    for &g in gates {
        b.push(g);
    }
    b.finish()
}

/// The distillation layer-selection inequality, restated independently of
/// the search loop that the planner uses.
fn distance_admissible(pp: &PhysicalParams, p: f64, d: u32) -> bool {
    let exponent = ((d + 1) / 2) as f64;
    (192.0 * d as f64).ln() + exponent * (100.0 * pp.p_g).ln()
        < (pp.epsilon * p / (1.0 + pp.epsilon)).ln()
}

proptest! {
    /// Every distance in a distillation plan is the least admissible one
    /// for its layer, and the plan's derived columns follow the layer rules.
    #[test]
    fn distillation_distances_minimal(exp in -55.0f64..-4.1) {
        let pp = PhysicalParams::default();
        let p_out = 10f64.powf(exp);
        let plan = plan_distillation(&pp, p_out).unwrap();
        prop_assert!(!plan.distances.is_empty());

        let mut p = p_out;
        for (j, &d) in plan.distances.iter().enumerate() {
            prop_assert!(distance_admissible(&pp, p, d), "layer {j}: {d} rejected");
            if d > 3 {
                prop_assert!(
                    !distance_admissible(&pp, p, d - 1),
                    "layer {j}: {} also admissible",
                    d - 1
                );
            }
            p = (p / (35.0 * (1.0 + pp.epsilon))).cbrt();
        }
        // The relaxed requirement past the last layer is met by injection.
        prop_assert!(p > pp.p_in);

        let m = plan.distances.len();
        for j in 0..m {
            prop_assert_eq!(plan.layer_logical[j], 16 * 15u64.pow(j as u32));
            prop_assert_eq!(
                plan.layer_physical[j],
                plan.layer_logical[j] * plan.layer_physical_per_logical[j]
            );
            prop_assert_eq!(plan.layer_cycles[j], 10 * plan.distances[j] as u64);
        }
        prop_assert_eq!(plan.input_states, 16 * 15u64.pow(m as u32 - 1));
        prop_assert_eq!(plan.total_cycles, plan.layer_cycles.iter().sum::<u64>());
    }

    /// A target at or above the injection error needs no distillation.
    #[test]
    fn distillation_empty_when_not_needed(exp in -4.0f64..-1.0) {
        let pp = PhysicalParams::default();
        let plan = plan_distillation(&pp, 10f64.powf(exp)).unwrap();
        prop_assert!(plan.distances.is_empty());
        prop_assert_eq!(plan.input_states, 0);
        prop_assert_eq!(plan.parallelism, 1);
    }

    /// The code distance is the least one meeting the budget, and tightening
    /// the budget never shrinks it.
    #[test]
    fn code_distance_minimal_and_monotone(
        exp_a in -60.0f64..-3.0,
        exp_b in -60.0f64..-3.0,
    ) {
        let p_in = 1e-4f64;
        let meets = |d: u32, budget: f64| (p_in / 0.0125).powf((d + 1) as f64 / 2.0) < budget;

        for exp in [exp_a, exp_b] {
            let budget = 10f64.powf(exp);
            let d = code_distance(budget, p_in).unwrap();
            prop_assert!(meets(d, budget), "distance {d} misses budget {budget}");
            if d > 3 {
                prop_assert!(!meets(d - 1, budget), "{} also meets {budget}", d - 1);
            }
        }

        let (lo, hi) = (exp_a.min(exp_b), exp_a.max(exp_b));
        let d_tight = code_distance(10f64.powf(lo), p_in).unwrap();
        let d_loose = code_distance(10f64.powf(hi), p_in).unwrap();
        prop_assert!(d_tight >= d_loose);
    }

    /// A classical circuit composed with its inverse fixes every state, and
    /// inverting twice gives back the original gate list.
    #[test]
    fn inverse_round_trips((width, gates) in sized_circuit(|w| classical_gate(w).boxed(), 120)) {
        let circuit = build(width, &gates);
        let double_inverse = circuit.inverse().inverse();
        prop_assert_eq!(double_inverse.gates(), circuit.gates());

        let round_trip = circuit.compose(&circuit.inverse()).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(gates.len() as u64);
        for _ in 0..4 {
            let bits: Vec<bool> = (0..width).map(|_| rng.gen()).collect();
            let state = sim::BitState::from_bits(&bits);
            let out = sim::run(&round_trip, &state).unwrap();
            prop_assert_eq!(out.to_bits(), bits);
        }
    }

    /// Lowering rewrites each Toffoli into 7 T, 2 H, and 7 CNOT while
    /// leaving every other tally untouched.
    #[test]
    fn lowering_count_identities((width, gates) in sized_circuit(|w| mixed_gate(w).boxed(), 200)) {
        let circuit = build(width, &gates);
        let before = count_resources(&circuit).unwrap();
        let after = count_resources(&lower::lower(&circuit)).unwrap();

        prop_assert_eq!(after.toffoli, 0);
        prop_assert_eq!(after.t_count, before.t_count + 7 * before.toffoli);
        prop_assert_eq!(after.h, before.h + 2 * before.toffoli);
        prop_assert_eq!(after.cnot, before.cnot + 7 * before.toffoli);
        prop_assert_eq!(after.p, before.p);
        prop_assert_eq!(after.z, before.z);
        prop_assert_eq!(after.x, before.x);
        prop_assert_eq!(after.width, before.width);
    }

    /// Gate tallies add up under composition.
    #[test]
    fn compose_tally_additive(
        (width, gates_a) in sized_circuit(|w| mixed_gate(w).boxed(), 100),
    ) {
        let a = build(width, &gates_a);
        let b = a.inverse();
        let ab = a.compose(&b).unwrap();
        let ca = count_resources(&a).unwrap();
        let cb = count_resources(&b).unwrap();
        let cab = count_resources(&ab).unwrap();
        prop_assert_eq!(cab.total_gates, ca.total_gates + cb.total_gates);
        prop_assert_eq!(cab.toffoli, ca.toffoli + cb.toffoli);
        prop_assert_eq!(cab.t_count, ca.t_count + cb.t_count);
        prop_assert_eq!(cab.cnot, ca.cnot + cb.cnot);
        prop_assert_eq!(cab.h, ca.h + cb.h);
    }

    /// The key size returned for a cost budget satisfies the defining
    /// budget equation v*log2(k) + k/2 = c to high relative accuracy.
    #[test]
    fn max_search_bits_meets_budget(v in 0.0f64..5.0, c in 16.0f64..128.0) {
        let k = search::max_search_bits(v, c);
        prop_assert!(k > 0.0);
        let back = if v == 0.0 { k / 2.0 } else { v * k.log2() + k / 2.0 };
        prop_assert!(
            (back - c).abs() <= 1e-6 * c,
            "v {v}, c {c}: k {k} gives budget {back}"
        );
    }
}
