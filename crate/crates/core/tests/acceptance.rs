//! Acceptance criteria 1 through 10. Each test prints one line,
//! `criterion N: PASS|FAIL <summary>`, and then asserts the verdict.
//!
//! Run with `cargo test --release --test acceptance -- --nocapture` to see
//! the lines. Tests hold a shared lock so the timing criterion never shares
//! the machine with another criterion.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use inverse_ackermann::bench::{random_bignat, run_bench, summarize, BenchOp, Lcg};
use inverse_ackermann::encoding::{pair, seq_decode, seq_encode, triple, unpair};
use inverse_ackermann::oracle::{AckOracle, AckResult};
use inverse_ackermann::witness::{
    build_witness, check_graph, check_lt, comput_lt_verify, verify_labels, BuildOutcome, Label,
    DEFAULT_LABEL_BUDGET,
};
use inverse_ackermann::{
    alpha, alpha_prime, inv_ak, inv_trace, iter_log, parse_literal, BigNat, CostMeter,
    DEFAULT_BIT_BUDGET,
};

static SERIAL: Mutex<()> = Mutex::new(());

/// Values up to `2^16` have at most 17 digits.
const SMALL_RANGE_BITS: u64 = 17;
const SMALL_LIMIT: u64 = 1 << 16;
/// Highest row enumerated when a criterion ranges over "every (k, n)".
const MAX_ROW: u64 = 24;

const BIG_INPUT_TIME_LIMIT: Duration = Duration::from_secs(10);

const SCALING_SIZES: [u64; 7] = [1 << 12, 1 << 14, 1 << 16, 1 << 18, 1 << 20, 1 << 22, 1 << 24];
const SCALING_REPS: u32 = 5;
const SCALING_SEED: u64 = 0x1a2b_3c4d;
const COST_SLOPE_RANGE: (f64, f64) = (0.9, 1.1);
const DOUBLING_RATIO_RANGE: (f64, f64) = (1.5, 3.0);

fn report(criterion: u32, pass: bool, summary: impl AsRef<str>) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {verdict} {}", summary.as_ref());
    assert!(pass, "criterion {criterion} failed: {}", summary.as_ref());
}

fn lock() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn small(result: &AckResult) -> Option<u64> {
    result.small()
}

/// `(k, n, A(k, n))` for every `k ≤ MAX_ROW` and `n` with `A(k, n) ≤ 2^16`.
fn small_table() -> Vec<(u64, u64, u64)> {
    let mut oracle = AckOracle::new(SMALL_RANGE_BITS);
    let mut table = Vec::new();
    for k in 0..=MAX_ROW {
        for n in 0.. {
            match small(&oracle.eval(k, n)) {
                Some(v) if v <= SMALL_LIMIT => table.push((k, n, v)),
                _ => break,
            }
        }
    }
    table
}

#[test]
fn criterion_01_inverse_conformance() {
    let _guard = lock();
    let start = Instant::now();
    let mut oracle = AckOracle::new(SMALL_RANGE_BITS + 1);
    let mut meter = CostMeter::new();
    let mut mismatches = Vec::new();
    for k in 0..=2u64 {
        for m in 0..=SMALL_LIMIT {
            let target = BigNat::from(m);
            let brute = (0u64..)
                .find(|&j| match oracle.eval(k, j) {
                    AckResult::Value(v) => v >= target,
                    AckResult::ExceedsBudget => true,
                })
                .unwrap();
            let fast = inv_ak(k, &target, &mut meter);
            if fast != brute {
                mismatches.push((k, m, fast, brute));
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        mismatches.is_empty() && elapsed < Duration::from_secs(120),
        format!(
            "inv_ak(k, m) equals brute-force inverse for k in 0..=2, m in 0..=65536; {} mismatches {:?}; {:.2?}",
            mismatches.len(),
            mismatches.iter().take(3).collect::<Vec<_>>(),
            elapsed
        ),
    );
}

#[test]
fn criterion_02_alpha_table() {
    let _guard = lock();
    let mut meter = CostMeter::new();
    let expected = |m: u64| match m {
        0 | 1 => 0,
        2 => 1,
        3 | 4 => 2,
        _ => 3,
    };
    let bad: Vec<(u64, Result<u64, _>)> = (0..=SMALL_LIMIT)
        .map(|m| (m, alpha(&BigNat::from(m), &mut meter)))
        .filter(|(m, got)| *got != Ok(expected(*m)))
        .collect();
    report(
        2,
        bad.is_empty(),
        format!(
            "alpha(0..=4) = 0,0,1,2,2 and alpha(5..=65536) = 3; {} mismatches {:?}",
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_03_iterate_identity() {
    let _guard = lock();
    let mut oracle = AckOracle::new(SMALL_RANGE_BITS);
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in 0..MAX_ROW {
        for n in 0.. {
            let Some(direct) = small(&oracle.eval(k + 1, n)).filter(|&v| v <= SMALL_LIMIT) else {
                break;
            };
            let mut acc = 1u64;
            for _ in 0..n {
                acc = small(&oracle.eval(k, acc)).expect("iterates stay below the result");
            }
            checked += 1;
            if acc != direct {
                bad.push((k, n, direct, acc));
            }
        }
    }
    report(
        3,
        bad.is_empty() && checked > 0,
        format!(
            "A(k+1, n) = A_k^(n)(1) on {checked} pairs with k < {MAX_ROW}, A(k+1, n) <= 2^16; {} mismatches",
            bad.len()
        ),
    );
}

#[test]
fn criterion_04_trace_bound() {
    let _guard = lock();
    let mut meter = CostMeter::new();
    let mut bad = Vec::new();
    let mut worst = 0f64;
    for k in 1..=4u64 {
        for m in 4..=SMALL_LIMIT {
            let value = BigNat::from(m);
            let steps = inv_trace(k, &value, &mut meter).steps();
            let bound = 2 * iter_log(&value, 2, &mut meter);
            worst = worst.max(steps as f64 / bound as f64);
            if steps > bound {
                bad.push((k, m, steps, bound));
            }
        }
    }
    report(
        4,
        bad.is_empty(),
        format!(
            "trace length <= 2 log^(2)(m) for k in 1..=4, m in 4..=65536; worst ratio {worst:.3}; {} violations {:?}",
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_05_codec_suite() {
    let _guard = lock();
    let pair_ok = (0..100_000u64).all(|w| {
        let (u, v) = unpair(w);
        pair(u, v) == Some(w)
    });
    // Injectivity on the same range, from the other side.
    let mut seen = std::collections::HashSet::new();
    let inject_ok = (0..450u64)
        .flat_map(|u| (0..450u64).map(move |v| (u, v)))
        .filter_map(|(u, v)| pair(u, v).filter(|&w| w < 100_000).map(|w| (w, (u, v))))
        .all(|(w, uv)| seen.insert(w) && unpair(w) == uv)
        && seen.len() == 100_000;

    let mut triple_ok = true;
    for u in 0..100u64 {
        for v in 0..100u64 {
            for w in 0..100u64 {
                let s = (u + v + w) as u128;
                let code = triple(u, v, w).expect("small triples fit") as u128;
                triple_ok &= code <= 8 * s.pow(4);
            }
        }
    }

    let mut rng = Lcg::new(0x5eed);
    let mut seq_ok = true;
    for _ in 0..1000 {
        let len = 1 + (rng.next_block() % 20) as usize;
        let width = rng.next_block() % 64;
        let xs: Vec<u64> = (0..len)
            .map(|_| {
                let x = ((rng.next_block() as u64) << 32) | rng.next_block() as u64;
                if width == 0 { 0 } else { x >> (64 - width) }
            })
            .collect();
        let code = seq_encode(&xs).unwrap();
        let mu = *xs.iter().max().unwrap();
        let mu_len = (64 - mu.leading_zeros() as u64).max(1);
        let size = code.value().stored_len();
        let l = xs.len() as u64;
        seq_ok &= seq_decode(code.value()).as_deref() == Ok(&xs[..]);
        seq_ok &= 2 * l <= size && size <= 2 * l * (mu_len + 1);
    }
    report(
        5,
        pair_ok && inject_ok && triple_ok && seq_ok,
        format!(
            "pair/unpair bijective below 10^5: {}; triple <= 8(u+v+w)^4 below 100: {triple_ok}; 1000 seq round trips within size bounds: {seq_ok}",
            pair_ok && inject_ok
        ),
    );
}

#[test]
fn criterion_06_witness_round_trip_and_mutation() {
    let _guard = lock();
    let (k, n, r) = (4, 3, 5);
    let BuildOutcome::Witness(w) = build_witness(k, n, r, DEFAULT_LABEL_BUDGET).unwrap() else {
        report(6, false, "build_witness(4,3,5) refuted");
        unreachable!();
    };
    let accepted = comput_lt_verify(&w.to_code().unwrap(), k, n, r);
    let last_ok = w.labels().last() == Some(&Label::below(4, 3));

    let deletions_rejected = (0..w.labels().len()).all(|i| {
        let mut labels = w.labels().to_vec();
        labels.remove(i);
        !verify_labels(&labels, k, n, r)
    });

    // Every bound leaf ⟨3, v, 0⟩ needs v < r: shrink r below the leaf, and
    // push the leaf's argument to r and beyond.
    let leaf_v = w
        .labels()
        .iter()
        .find(|l| l.u == 3 && l.is_bound())
        .map(|l| l.v)
        .unwrap();
    let lowered = (0..=leaf_v).all(|r2| !comput_lt_verify(&w.to_code().unwrap(), k, n, r2));
    let raised = (r..r + 4).all(|v| {
        let labels: Vec<Label> = w
            .labels()
            .iter()
            .map(|&l| if l == Label::below(3, leaf_v) { Label::below(3, v) } else { l })
            .collect();
        !verify_labels(&labels, k, n, r)
    });
    let refuted = build_witness(4, 3, 4, DEFAULT_LABEL_BUDGET) == Ok(BuildOutcome::Refuted);

    report(
        6,
        accepted && last_ok && deletions_rejected && lowered && raised && refuted,
        format!(
            "({k},{n},{r}) witness of {} labels accepted: {accepted}, ends in <4,3,0>: {last_ok}; deletions rejected: {deletions_rejected}; threshold violations rejected: {}; (4,3,4) refuted: {refuted}",
            w.labels().len(),
            lowered && raised
        ),
    );
}

#[test]
fn criterion_07_graph_conformance() {
    let _guard = lock();
    let mut meter = CostMeter::new();
    let table = small_table();
    let mut bad = Vec::new();
    for &(k, n, a) in &table {
        for m in [a.saturating_sub(1), a, a + 1] {
            if m == a.saturating_sub(1) && a == 0 {
                continue;
            }
            let got = check_graph(k, n, &BigNat::from(m), &mut meter).unwrap();
            if got != (m == a) {
                bad.push((k, n, m, got));
            }
        }
    }
    report(
        7,
        bad.is_empty(),
        format!(
            "check_graph matches the oracle at A-1, A, A+1 for {} pairs with k <= {MAX_ROW}, A(k,n) <= 2^16; {} mismatches {:?}",
            table.len(),
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_08_big_input_sanity() {
    let _guard = lock();
    let mut meter = CostMeter::new();
    let start = Instant::now();
    let huge = parse_literal("pow2(pow2(20))", DEFAULT_BIT_BUDGET).unwrap();
    let alpha_huge = alpha(&huge, &mut meter);
    let t65536 = parse_literal("pow2(65536)", DEFAULT_BIT_BUDGET).unwrap();
    let inv1 = inv_ak(1, &t65536, &mut meter);
    let elapsed = start.elapsed();

    let literals = [
        "0", "1", "2", "3", "4", "5", "16", "17", "255", "256", "65535", "65536", "65537",
        "tower(1,2)", "tower(2,2)", "tower(3,2)", "tower(4,2)", "tower(3,3)", "tower(2,16)",
        "pow2(pow2(20))", "pow2(1000000)",
    ];
    let mut gap_bad = Vec::new();
    for text in literals {
        let m = parse_literal(text, DEFAULT_BIT_BUDGET).unwrap();
        let a = alpha(&m, &mut meter).unwrap();
        let ap = alpha_prime(&m, &mut meter).unwrap();
        if ap > a || a - ap > 2 {
            gap_bad.push((text, a, ap));
        }
    }
    // A tower literal above 4 is still far below A_3(3) = exp^(65536)(1), so
    // phase one settles α at 3 through Inv_{A_3}(m) = 3.
    let towers_ok = literals
        .iter()
        .filter(|t| t.starts_with("tower") || t.starts_with("pow2"))
        .map(|t| parse_literal(t, DEFAULT_BIT_BUDGET).unwrap())
        .filter(|m| *m > BigNat::from(4))
        .all(|m| inv_ak(3, &m, &mut meter) == 3 && alpha(&m, &mut meter) == Ok(3));

    let pass = alpha_huge == Ok(3)
        && inv1 == 6
        && elapsed < BIG_INPUT_TIME_LIMIT
        && gap_bad.is_empty()
        && towers_ok;
    report(
        8,
        pass,
        format!(
            "alpha(pow2(2^20)) = {alpha_huge:?} (want 3); inv_ak(1, pow2(65536)) = {inv1} (want 6); {elapsed:.2?}; gap 0..=2 on {} literals: {}; towers at 3: {towers_ok}",
            literals.len(),
            gap_bad.is_empty()
        ),
    );
}

#[test]
fn criterion_09_linear_scaling() {
    let _guard = lock();
    let start = Instant::now();
    let records = run_bench(&SCALING_SIZES, SCALING_REPS, SCALING_SEED, DEFAULT_BIT_BUDGET).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for op in [BenchOp::Alpha, BenchOp::Inv(3)] {
        let s = summarize(&records, op).unwrap();
        let cost_ok = (COST_SLOPE_RANGE.0..=COST_SLOPE_RANGE.1).contains(&s.cost_slope);
        let time_ok = (DOUBLING_RATIO_RANGE.0..=DOUBLING_RATIO_RANGE.1).contains(&s.doubling_ratio);
        pass &= cost_ok && time_ok;
        parts.push(format!(
            "{op}: cost slope {:.4} in {COST_SLOPE_RANGE:?}: {cost_ok}, wall ratio per doubling {:.3} in {DOUBLING_RATIO_RANGE:?}: {time_ok}",
            s.cost_slope, s.doubling_ratio
        ));
    }
    parts.push(format!("{:.1?}", start.elapsed()));
    report(9, pass, parts.join("; "));
}

#[test]
fn criterion_10_monotonicity() {
    let _guard = lock();
    const RANGE_BITS: u64 = 1 << 17;
    const ROWS: u64 = 8;
    let mut oracle = AckOracle::new(RANGE_BITS);
    let mut rows: Vec<Vec<BigNat>> = Vec::new();
    for k in 0..=ROWS {
        let mut row = Vec::new();
        for n in 0.. {
            match oracle.eval(k, n) {
                AckResult::Value(v) => row.push(v),
                AckResult::ExceedsBudget => break,
            }
        }
        rows.push(row);
    }
    let increasing = rows.iter().all(|row| row.windows(2).all(|w| w[0] < w[1]));
    let dominated = rows.windows(2).all(|pair| {
        let (lower, upper) = (&pair[0], &pair[1]);
        (1..lower.len().min(upper.len())).all(|n| lower[n] <= upper[n])
    });

    let mut meter = CostMeter::new();
    let mut grid: Vec<BigNat> = (0..=4096u64).map(BigNat::from).collect();
    for text in ["pow2(64)", "pow2(1000)", "pow2(65536)", "pow2(pow2(20))"] {
        let m = parse_literal(text, DEFAULT_BIT_BUDGET).unwrap();
        grid.push(m.pred(&mut meter).unwrap());
        grid.push(m.clone());
        grid.push(m.succ(&mut meter));
    }
    let mut lt_bad = Vec::new();
    for k in 0..=6u64 {
        for n in 0..=5u64 {
            let mut prev = false;
            for m in &grid {
                let now = check_lt(k, n, m, &mut meter).unwrap();
                if prev && !now {
                    lt_bad.push((k, n, m.to_string().len()));
                }
                prev = now;
            }
        }
    }
    report(
        10,
        increasing && dominated && lt_bad.is_empty(),
        format!(
            "A_k strictly increasing: {increasing}; A_k(n) <= A_(k+1)(n): {dominated} (k <= {ROWS}, values within {RANGE_BITS} bits); check_lt monotone in m on a {}-point grid: {}",
            grid.len(),
            lt_bad.is_empty()
        ),
    );
}

#[test]
fn bench_inputs_are_exact_width() {
    let _guard = lock();
    let mut meter = CostMeter::new();
    for &bits in &SCALING_SIZES[..3] {
        assert_eq!(random_bignat(bits, SCALING_SEED).bit_length(&mut meter), bits);
    }
}
