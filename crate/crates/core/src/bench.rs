//! Scaling benchmark for `alpha` and `inv -k 0..3` on pseudo-random inputs.
//!
//! Inputs come from the 64-bit linear congruential recurrence
//! `x ← 6364136223846793005·x + 1442695040888963407 (mod 2^64)`; each step
//! contributes the upper 32 bits of the state as the next 32 digits, least
//! significant first. The top digit of every input is forced to 1 so its bit
//! length is exact.

use std::fmt;
use std::hint::black_box;
use std::io::{self, Write};
use std::time::Instant;

use thiserror::Error;

use crate::bignat::{BigNat, CostMeter};
use crate::inverse::{alpha, inv_ak};

const LCG_MUL: u64 = 6364136223846793005;
const LCG_INC: u64 = 1442695040888963407;

pub const CSV_HEADER: &str = "op,bits,rep,nanos,cost_units";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("invalid benchmark arguments: {0}")]
    Argument(String),
    #[error("size {bits} exceeds the bit budget {budget}")]
    BudgetExceeded { bits: u64, budget: u64 },
}

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_block(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(LCG_MUL).wrapping_add(LCG_INC);
        (self.state >> 32) as u32
    }
}

/// A pseudo-random natural of exactly `bits` digits (`bits ≥ 1`).
pub fn random_bignat(bits: u64, seed: u64) -> BigNat {
    assert!(bits >= 1, "inputs have at least one digit");
    let mut rng = Lcg::new(seed);
    let mut digits = Vec::with_capacity(bits as usize);
    while (digits.len() as u64) < bits {
        let block = rng.next_block();
        let take = (bits - digits.len() as u64).min(32);
        digits.extend((0..take).map(|i| (block >> i) & 1 == 1));
    }
    *digits.last_mut().expect("bits >= 1") = true;
    BigNat::from_le_digits(digits)
}

fn input_seed(seed: u64, bits: u64, rep: u32) -> u64 {
    seed ^ bits.rotate_left(32) ^ (rep as u64).wrapping_mul(LCG_MUL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchOp {
    Alpha,
    /// `inv -k k` for `k ≤ 3`.
    Inv(u8),
}

pub const BENCH_OPS: [BenchOp; 5] = [
    BenchOp::Alpha,
    BenchOp::Inv(0),
    BenchOp::Inv(1),
    BenchOp::Inv(2),
    BenchOp::Inv(3),
];

impl BenchOp {
    pub fn run(self, m: &BigNat, meter: &mut CostMeter) -> u64 {
        match self {
            BenchOp::Alpha => alpha(m, meter).expect("alpha is total on materialized inputs"),
            BenchOp::Inv(k) => inv_ak(k as u64, m, meter),
        }
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchOp::Alpha => f.write_str("alpha"),
            BenchOp::Inv(k) => write!(f, "inv-k{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub op: BenchOp,
    pub bits: u64,
    pub rep: u32,
    pub nanos: u64,
    pub cost_units: u64,
}

/// Times every op in [`BENCH_OPS`] on `reps` inputs of each size. Runs are
/// sequential, each with a fresh meter.
pub fn run_bench(
    sizes: &[u64],
    reps: u32,
    seed: u64,
    budget: u64,
) -> Result<Vec<BenchRecord>, BenchError> {
    if reps < 3 {
        return Err(BenchError::Argument(format!("need at least 3 reps, got {reps}")));
    }
    if sizes.is_empty() {
        return Err(BenchError::Argument("no sizes given".into()));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BenchError::Argument("sizes must be strictly ascending".into()));
    }
    if sizes[0] == 0 {
        return Err(BenchError::Argument("sizes must be positive".into()));
    }
    if let Some(&bits) = sizes.iter().find(|&&b| b > budget) {
        return Err(BenchError::BudgetExceeded { bits, budget });
    }

    let mut records = Vec::with_capacity(sizes.len() * reps as usize * BENCH_OPS.len());
    for &bits in sizes {
        for rep in 0..reps {
            let m = random_bignat(bits, input_seed(seed, bits, rep));
            for op in BENCH_OPS {
                let mut meter = CostMeter::new();
                let start = Instant::now();
                black_box(op.run(black_box(&m), &mut meter));
                let nanos = start.elapsed().as_nanos() as u64;
                records.push(BenchRecord {
                    op,
                    bits,
                    rep,
                    nanos,
                    cost_units: meter.units(),
                });
            }
        }
    }
    Ok(records)
}

pub fn write_csv<W: Write>(records: &[BenchRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{},{},{},{},{}", r.op, r.bits, r.rep, r.nanos, r.cost_units)?;
    }
    Ok(())
}

pub fn median(mut values: Vec<f64>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpSummary {
    pub op: BenchOp,
    /// `(bits, median cost, median nanos)` per size, ascending.
    pub per_size: Vec<(u64, f64, f64)>,
    pub cost_slope: f64,
    pub time_slope: f64,
    /// Median over consecutive sizes of the wall-time ratio, rescaled to
    /// one doubling of the bit length.
    pub doubling_ratio: f64,
}

/// Aggregates one op's records over reps. `None` with fewer than two sizes.
pub fn summarize(records: &[BenchRecord], op: BenchOp) -> Option<OpSummary> {
    let mut sizes: Vec<u64> = records.iter().filter(|r| r.op == op).map(|r| r.bits).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let per_size: Vec<(u64, f64, f64)> = sizes
        .iter()
        .map(|&bits| {
            let of_size = || records.iter().filter(move |r| r.op == op && r.bits == bits);
            let cost = median(of_size().map(|r| r.cost_units as f64).collect()).expect("nonempty");
            // Clamp to 1ns so a timer that reads zero keeps the logs finite.
            let nanos = median(of_size().map(|r| r.nanos.max(1) as f64).collect()).expect("nonempty");
            (bits, cost, nanos)
        })
        .collect();
    let cost_slope = loglog_slope(&per_size.iter().map(|p| (p.0 as f64, p.1)).collect::<Vec<_>>())?;
    let time_slope = loglog_slope(&per_size.iter().map(|p| (p.0 as f64, p.2)).collect::<Vec<_>>())?;
    let ratios = per_size
        .windows(2)
        .map(|w| {
            let doublings = (w[1].0 as f64 / w[0].0 as f64).log2();
            (w[1].2 / w[0].2).powf(1.0 / doublings)
        })
        .collect();
    Some(OpSummary {
        op,
        per_size,
        cost_slope,
        time_slope,
        doubling_ratio: median(ratios)?,
    })
}
