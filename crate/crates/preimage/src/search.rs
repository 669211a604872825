//! Quantum-vs-classical search trade-off math: Lambert W evaluation, the
//! largest searchable key size under a cost budget, advantage tables,
//! crossover points, and parallel-search cost scaling.

use num_bigint::BigUint;

/// Principal-branch Lambert W on x >= 0: the w >= 0 with w*e^w = x.
///
/// Asymptotic seed ln x - ln ln x (for x > e, else ln(1+x)) refined by
/// Halley iteration; the result satisfies |w*e^w - x| <= 1e-12 * max(1, x).
///
/// Panics on a negative argument.
pub fn lambert_w(x: f64) -> f64 {
    assert!(x >= 0.0, "lambert_w: negative argument {x}");
    if x == 0.0 {
        return 0.0;
    }
    let mut w = if x > std::f64::consts::E {
        let lx = x.ln();
        lx - lx.ln()
    } else {
        x.ln_1p()
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * (w + 1.0));
        let next = w - f / denom;
        if (next - w).abs() <= 1e-15 * next.abs().max(1.0) {
            w = next;
            break;
        }
        w = next;
    }
    w
}

/// Lambert W of x given as log2(x), entirely in the log domain, for
/// arguments far beyond f64 range: solves w + ln w = ln x by Newton.
///
/// Falls back to the direct evaluation when log2(x) <= 1.
pub fn lambert_w_log2(log2_x: f64) -> f64 {
    if log2_x <= 1.0 {
        return lambert_w(log2_x.exp2());
    }
    let l = log2_x * std::f64::consts::LN_2;
    let mut w = l - l.ln();
    for _ in 0..64 {
        let f = w + w.ln() - l;
        let next = w - f / (1.0 + 1.0 / w);
        if (next - w).abs() <= 1e-15 * next.abs().max(1.0) {
            w = next;
            break;
        }
        w = next;
    }
    w
}

/// Largest real key size k searchable under log2 cost budget `c` when the
/// per-iteration overhead scales as k^v: the solution of
/// k/2 + v*log2(k) = c, namely (2v/ln 2) * W(2^{c/v} * ln 2 / (2v)).
///
/// v = 0 degenerates to k = 2c.
pub fn max_search_bits(v: f64, c: f64) -> f64 {
    assert!(v >= 0.0 && c > 0.0, "max_search_bits: v >= 0 and c > 0");
    if v == 0.0 {
        return 2.0 * c;
    }
    let log2_arg = c / v + (std::f64::consts::LN_2 / (2.0 * v)).log2();
    2.0 * v / std::f64::consts::LN_2 * lambert_w_log2(log2_arg)
}

/// Advantage of quantum search at overhead exponent `v` under budget `c`:
/// the searched key size, floored to whole bits, per budget bit.
pub fn advantage(v: f64, c: f64) -> f64 {
    let k = max_search_bits(v, c);
    // Absorb float roundoff at exact-integer solutions before flooring.
    let bits = (k + 1e-9).floor();
    (bits / c * 100.0).round() / 100.0
}

/// Advantage grid over the given overhead exponents (rows) and budgets
/// (columns), each entry rounded to two decimals.
pub fn advantage_table(v_values: &[f64], c_values: &[f64]) -> Vec<Vec<f64>> {
    v_values
        .iter()
        .map(|&v| c_values.iter().map(|&c| advantage(v, c)).collect())
        .collect()
}

/// Smallest key size k >= 5 at which quantum search with overhead k^a is
/// no more expensive than classical search: 2^k >= k^(2a), checked in
/// exact integer arithmetic.
///
/// Below k = 5 the comparison degenerates (at a = 1 it already holds at
/// k = 4 with equality), so the scan starts where the costs separate.
pub fn crossover_k(a: u32) -> u64 {
    assert!(a >= 1, "crossover_k: a >= 1");
    let mut k = 5u64;
    loop {
        let quantum = BigUint::from(k).pow(2 * a);
        let classical = BigUint::from(1u8) << k;
        if classical >= quantum {
            return k;
        }
        k += 1;
    }
}

/// Quantum parallel-search cost at 2^t machines: temporal cost shrinks by
/// 2^(t/2), area cost grows by 2^t.
pub fn parallel_cost_quantum(c_t: f64, c_a: f64, t: f64) -> (f64, f64) {
    assert!(t >= 0.0, "parallel_cost_quantum: t >= 0");
    (c_t * (-t / 2.0).exp2(), c_a * t.exp2())
}

/// Classical parallel-search cost at 2^t machines over a k-bit space:
/// (2^(k-t) time, 2^t machines); the time-area product stays 2^k.
pub fn parallel_cost_classical(k: f64, t: f64) -> (f64, f64) {
    assert!(t >= 0.0, "parallel_cost_classical: t >= 0");
    ((k - t).exp2(), t.exp2())
}

/// Overhead exponent implied by a total attack cost: the v with
/// log2(cost) = k/2 + v*log2(k).
pub fn overhead_v(log2_cost: f64, k: f64) -> f64 {
    assert!(k > 1.0, "overhead_v: k > 1");
    (log2_cost - k / 2.0) / k.log2()
}

/// A point on the advantage grid: overhead exponent and log2 cost budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantageQuery {
    pub v: f64,
    pub c: f64,
}

impl AdvantageQuery {
    pub fn new(v: f64, c: f64) -> Self {
        assert!(v >= 0.0 && c > 0.0, "AdvantageQuery: v >= 0 and c > 0");
        AdvantageQuery { v, c }
    }

    pub fn max_search_bits(&self) -> f64 {
        max_search_bits(self.v, self.c)
    }

    pub fn advantage(&self) -> f64 {
        advantage(self.v, self.c)
    }
}

/// A (temporal, area) cost pair under parallelization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelCost {
    pub c_t: f64,
    pub c_a: f64,
}

impl ParallelCost {
    /// Quantum scaling at 2^t machines.
    pub fn quantum(&self, t: f64) -> ParallelCost {
        let (c_t, c_a) = parallel_cost_quantum(self.c_t, self.c_a, t);
        ParallelCost { c_t, c_a }
    }
}
