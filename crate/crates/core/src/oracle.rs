//! Brute-force Ackermann evaluation under a bit budget.
//!
//! `A(0, n) = 2^n`, `A(k, 0) = 1`, `A(k+1, n+1) = A(k, A(k+1, n))`. Values are
//! computed through the iterate identity `A_{k+1}(n) = A_k^{(n)}(1)`, which
//! needs a stack of depth at most `k`. This is the ground truth the other
//! modules are tested against; it uses none of their code beyond
//! [`BigNat`].

use std::collections::HashMap;

use crate::bignat::{BigNat, CostMeter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AckResult {
    Value(BigNat),
    ExceedsBudget,
}

impl AckResult {
    pub fn value(&self) -> Option<&BigNat> {
        match self {
            AckResult::Value(v) => Some(v),
            AckResult::ExceedsBudget => None,
        }
    }

    pub fn into_value(self) -> Option<BigNat> {
        match self {
            AckResult::Value(v) => Some(v),
            AckResult::ExceedsBudget => None,
        }
    }

    /// The value as a machine word, if it is in budget and fits one.
    pub fn small(&self) -> Option<u64> {
        self.value()
            .and_then(|v| v.to_small(&mut CostMeter::new()).ok())
    }
}

/// One evaluation session: a bit budget plus a memo of exact subresults.
#[derive(Debug)]
pub struct AckOracle {
    budget: u64,
    memo: HashMap<(u64, u64), BigNat>,
    memo_bits: u64,
    memo_cap_bits: u64,
}

impl AckOracle {
    /// The memo holds at most four budgets' worth of digits in total.
    pub fn new(budget: u64) -> Self {
        Self {
            budget,
            memo: HashMap::new(),
            memo_bits: 0,
            memo_cap_bits: budget.saturating_mul(4),
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn eval(&mut self, k: u64, n: u64) -> AckResult {
        if let Some(result) = self.direct(k, n) {
            return result;
        }
        // Explicit stack of pending iterates; frame (k, n, done, acc) holds
        // acc = A_{k-1}^{(done)}(1). Each frame is charged one word of budget.
        let max_depth = (self.budget / 64).max(1) as usize;
        let mut stack = vec![Frame::new(k, n)];
        loop {
            let top = stack.last_mut().expect("stack is nonempty");
            if top.done == top.n {
                let frame = stack.pop().expect("stack is nonempty");
                self.remember(frame.k, frame.n, &frame.acc);
                match stack.last_mut() {
                    None => return AckResult::Value(frame.acc),
                    Some(parent) => {
                        parent.acc = frame.acc;
                        parent.done += 1;
                    }
                }
                continue;
            }
            let Ok(arg) = top.acc.to_small(&mut CostMeter::new()) else {
                return AckResult::ExceedsBudget;
            };
            let inner = top.k - 1;
            match self.direct(inner, arg) {
                Some(AckResult::Value(v)) => {
                    top.acc = v;
                    top.done += 1;
                }
                Some(AckResult::ExceedsBudget) => return AckResult::ExceedsBudget,
                None => {
                    if stack.len() >= max_depth {
                        return AckResult::ExceedsBudget;
                    }
                    stack.push(Frame::new(inner, arg));
                }
            }
        }
    }

    /// Base cases and memo hits.
    fn direct(&self, k: u64, n: u64) -> Option<AckResult> {
        if n == 0 {
            return Some(AckResult::Value(BigNat::one()));
        }
        if k == 0 {
            // The exponential step is the only place values grow; check here.
            return Some(match BigNat::pow2(n, self.budget) {
                Ok(v) => AckResult::Value(v),
                Err(_) => AckResult::ExceedsBudget,
            });
        }
        self.memo.get(&(k, n)).map(|v| AckResult::Value(v.clone()))
    }

    fn remember(&mut self, k: u64, n: u64, value: &BigNat) {
        let bits = value.stored_len();
        if self.memo_bits + bits <= self.memo_cap_bits {
            self.memo_bits += bits;
            self.memo.insert((k, n), value.clone());
        }
    }
}

struct Frame {
    k: u64,
    n: u64,
    done: u64,
    acc: BigNat,
}

impl Frame {
    fn new(k: u64, n: u64) -> Self {
        Self {
            k,
            n,
            done: 0,
            acc: BigNat::one(),
        }
    }
}

pub fn ack_eval(k: u64, n: u64, budget: u64) -> AckResult {
    AckOracle::new(budget).eval(k, n)
}

/// `Ack(n) = A(n, n)`.
pub fn ack_diag(n: u64, budget: u64) -> AckResult {
    ack_eval(n, n, budget)
}
