//! Exact inverses of the Ackermann rows and the inverse Ackermann function.
//!
//! `Inv_{A_0}` is `⌈log2⌉`. For `k ≥ 0`, `Inv_{A_{k+1}}(m)` is the number of
//! steps of the descending sequence `n_0 = m`, `n_{r+1} = Inv_{A_k}(n_r)`,
//! stopped at the first `n_s ≤ 1`. Only the first step reads the (possibly
//! huge) input; `n_1 ≤ log(m)` and everything after it is a machine word, so
//! the whole computation is one linear scan plus polylogarithmic work.

use std::cmp::Ordering;

use crate::bignat::{ceil_log2_small, BigNat, CostMeter};
use crate::witness::{self, WitnessError};

/// From this level on, inverses of machine words have a closed form:
/// `A_k(0..=2) = 1, 2, 4` and `A_k(3) ≥ A_3(3)`, which dwarfs every word.
const CLOSED_FORM_LEVEL: u64 = 4;

/// The descending sequence whose length is `Inv_{A_k}(m)`, built with the
/// inner inverse `Inv_{A_{k-1}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvTrace<'a> {
    k: u64,
    start: &'a BigNat,
    tail: Vec<u64>,
}

impl<'a> InvTrace<'a> {
    pub fn k(&self) -> u64 {
        self.k
    }

    /// `n_0`.
    pub fn start(&self) -> &'a BigNat {
        self.start
    }

    /// `n_1, …, n_s`.
    pub fn tail(&self) -> &[u64] {
        &self.tail
    }

    /// `s`, which equals `Inv_{A_k}(n_0)`.
    pub fn steps(&self) -> u64 {
        self.tail.len() as u64
    }

    /// The full sequence `n_0, …, n_s` when `n_0` fits a machine word.
    pub fn small_steps(&self) -> Option<Vec<u64>> {
        let head = self.start.to_small(&mut CostMeter::new()).ok()?;
        Some(std::iter::once(head).chain(self.tail.iter().copied()).collect())
    }
}

/// `Inv_{A_k}` on a machine word.
pub fn inv_small(k: u64, n: u64, meter: &mut CostMeter) -> u64 {
    match k {
        0 => ceil_log2_small(n, meter),
        k if k < CLOSED_FORM_LEVEL => trace_steps(k - 1, n, meter),
        _ => {
            meter.charge(1);
            match n {
                0..=1 => 0,
                2 => 1,
                3..=4 => 2,
                _ => 3,
            }
        }
    }
}

/// Steps from `n` down to a value `≤ 1` under `Inv_{A_inner}`.
fn trace_steps(inner: u64, mut n: u64, meter: &mut CostMeter) -> u64 {
    let mut steps = 0;
    while n > 1 {
        meter.charge(1);
        n = inv_small(inner, n, meter);
        steps += 1;
    }
    steps
}

/// Least `j` with `A_k(j) ≥ m`.
pub fn inv_ak(k: u64, m: &BigNat, meter: &mut CostMeter) -> u64 {
    if k == 0 {
        return m.ceil_log2(meter);
    }
    if m.cmp_small(1, meter) != Ordering::Greater {
        return 0;
    }
    // Climb one level at a time: the trace for level `level` starts with
    // n_1 = Inv_{A_{level-1}}(m), so its length is one plus the steps left
    // from n_1. Past the closed-form level the climb is stationary.
    let mut inv = m.ceil_log2(meter);
    for level in 1..=k.min(CLOSED_FORM_LEVEL + 1) {
        meter.charge(1);
        inv = 1 + trace_steps(level - 1, inv, meter);
    }
    inv
}

/// The sequence `n_0 = m, n_{r+1} = Inv_{A_{k-1}}(n_r)` stopped at `n_s ≤ 1`.
///
/// # Panics
///
/// If `k == 0`; level zero has no inner inverse.
pub fn inv_trace<'a>(k: u64, m: &'a BigNat, meter: &mut CostMeter) -> InvTrace<'a> {
    assert!(k >= 1, "inv_trace needs k >= 1");
    let mut tail = Vec::new();
    if m.cmp_small(1, meter) == Ordering::Greater {
        let mut n = inv_ak(k - 1, m, meter);
        tail.push(n);
        while n > 1 {
            meter.charge(1);
            n = inv_small(k - 1, n, meter);
            tail.push(n);
        }
    }
    InvTrace { k, start: m, tail }
}

/// `log^{(j)}(m)` with `log(0) = log(1) = 0`.
///
/// # Panics
///
/// If `j == 0`.
pub fn iter_log(m: &BigNat, j: u64, meter: &mut CostMeter) -> u64 {
    assert!(j >= 1, "iter_log needs at least one application");
    let mut x = m.ceil_log2(meter);
    for _ in 1..j {
        if x == 0 {
            break;
        }
        x = ceil_log2_small(x, meter);
    }
    x
}

/// `α(m)`: the least `k` with `A(k, k) ≥ m`.
///
/// Phase one computes `ρ_k = Inv_{A_k}(m)` for `k ≤ 3` and stops at the first
/// `ρ_k ≤ k`. Otherwise `A_3(3) < m` and the answer is found by searching for
/// certificates of `A_j(j) < m`, `j ≥ 4`; see [`witness::alpha_phase2`].
pub fn alpha(m: &BigNat, meter: &mut CostMeter) -> Result<u64, WitnessError> {
    let mut rho3 = 0;
    for k in 0..=3 {
        let rho = inv_ak(k, m, meter);
        if rho <= k {
            return Ok(k);
        }
        rho3 = rho;
    }
    let log2m = iter_log(m, 2, meter);
    let log4m = iter_log(m, 4, meter);
    witness::alpha_phase2(log2m, log4m, rho3).map(|outcome| outcome.alpha)
}

/// `α'(m) = α(log^{(2)}(m))`, within two of `α(m)`.
pub fn alpha_prime(m: &BigNat, meter: &mut CostMeter) -> Result<u64, WitnessError> {
    let reduced = BigNat::from_u64(iter_log(m, 2, meter));
    alpha(&reduced, meter)
}
