//! Certificates for `A_k(n) < m` and the predicates built on them.
//!
//! For `k ≥ 4, n ≥ 3` the statement `A_k(n) < m` unrolls into a binary tree
//! of true statements. An internal node `A_u(v) = w` has sons `A_u(v-1) = w'`
//! and `A_{u-1}(w') = w`; an internal node `A_u(v) < m` has sons
//! `A_u(v-1) = w'` and `A_{u-1}(w') < m`. Leaves are `A_0(v) = 2^v`,
//! `A_u(0) = 1`, and `A_3(v) < m`. The last kind is checked as `v < r` with
//! `r = Inv_{A_3}(m)` computed once.
//!
//! A label `A_u(v) = w` is stored as `⟨u, v, w⟩` (`w ≥ 1` always holds) and
//! `A_u(v) < m` as `⟨u, v, 0⟩`. A certificate is the set of labels sorted
//! lexicographically on `(u, v, w)`, packed with the sequence code.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::bignat::{BigNat, CostMeter};
use crate::encoding::{seq_encode, triple, untriple, SeqCode};
use crate::inverse::{inv_ak, iter_log};

pub const DEFAULT_LABEL_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("witness needs more than {budget} labels")]
    BudgetExceeded { budget: usize },
    #[error("label {0} has no 64-bit code")]
    LabelOverflow(Label),
    #[error("malformed witness file: {0}")]
    Format(String),
}

/// `⟨u, v, w⟩`: `A_u(v) = w` when `w > 0`, `A_u(v) < m` when `w = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub u: u64,
    pub v: u64,
    pub w: u64,
}

impl Label {
    /// `A_u(v) = w`.
    pub fn equals(u: u64, v: u64, w: u64) -> Self {
        debug_assert!(w > 0);
        Self { u, v, w }
    }

    /// `A_u(v) < m`.
    pub fn below(u: u64, v: u64) -> Self {
        Self { u, v, w: 0 }
    }

    pub fn is_bound(&self) -> bool {
        self.w == 0
    }

    pub fn code(&self) -> Option<u64> {
        triple(self.u, self.v, self.w)
    }

    pub fn from_code(code: u64) -> Self {
        let (u, v, w) = untriple(code);
        Self { u, v, w }
    }

    /// Leaf forms: `⟨0, v, 2^v⟩`, `⟨u, 0, 1⟩`, and `⟨3, v, 0⟩` with `v < r`.
    pub fn is_leaf(&self, r: u64) -> bool {
        (self.u == 0 && self.v < 64 && self.w == 1 << self.v)
            || (self.v == 0 && self.w == 1)
            || (self.u == 3 && self.w == 0 && self.v < r)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{},{},{}⟩", self.u, self.v, self.w)
    }
}

/// A sorted label set certifying `A_k(n) < m` for any `m` with
/// `Inv_{A_3}(m) = r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSeq {
    k: u64,
    n: u64,
    r: u64,
    labels: Vec<Label>,
}

impl WitnessSeq {
    pub fn new(k: u64, n: u64, r: u64, labels: Vec<Label>) -> Self {
        Self { k, n, r, labels }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn to_code(&self) -> Result<SeqCode, WitnessError> {
        let codes = self
            .labels
            .iter()
            .map(|l| l.code().ok_or(WitnessError::LabelOverflow(*l)))
            .collect::<Result<Vec<_>, _>>()?;
        seq_encode(&codes).map_err(|e| WitnessError::Argument(e.to_string()))
    }

    pub fn verify(&self) -> bool {
        verify_labels(&self.labels, self.k, self.n, self.r)
    }

    pub fn to_file(&self) -> Result<WitnessFile, WitnessError> {
        Ok(WitnessFile {
            k: self.k,
            n: self.n,
            r: self.r,
            code: self.to_code()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildOutcome {
    Witness(WitnessSeq),
    /// Some required statement fails for this `r`, so `A_k(n) < m` is false.
    Refuted,
}

/// `A_u(v)` when it is below `cap`.
fn value_below(u: u64, v: u64, cap: u64) -> Option<u64> {
    let value = match (u, v) {
        (_, 0) => 1,
        (0, v) if v < 64 => 1 << v,
        (0, _) => return None,
        // A_u(1) = 2 and A_u(2) = 4 on every row.
        (_, 1) => 2,
        (_, 2) => 4,
        // A_u(3) ≥ A_3(3), which no machine word reaches.
        (u, _) if u >= 3 => return None,
        (u, v) => {
            // Iterates increase, so an iterate past the cap ends the search.
            let mut acc = 1;
            for _ in 0..v {
                acc = value_below(u - 1, acc, cap)?;
            }
            acc
        }
    };
    (value < cap).then_some(value)
}

struct Builder {
    budget: usize,
    labels: BTreeSet<Label>,
}

impl Builder {
    fn insert(&mut self, label: Label) -> Result<bool, WitnessError> {
        if self.labels.contains(&label) {
            return Ok(false);
        }
        if self.labels.len() >= self.budget {
            return Err(WitnessError::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(self.labels.insert(label))
    }

    /// Unrolls `A_u(v) = w` down to leaves. Every value inside the subtree
    /// is at most `w`, so `cap = w + 1` suffices.
    fn add_equality(&mut self, root: Label) -> Result<(), WitnessError> {
        let mut stack = vec![root];
        while let Some(label) = stack.pop() {
            if !self.insert(label)? || label.u == 0 || label.v == 0 {
                continue;
            }
            let inner = value_below(label.u, label.v - 1, label.w.saturating_add(1))
                .expect("left son value is below its parent's");
            stack.push(Label::equals(label.u, label.v - 1, inner));
            stack.push(Label::equals(label.u - 1, inner, label.w));
        }
        Ok(())
    }
}

/// Builds the canonical certificate for `A_k(n) < m` where `r = Inv_{A_3}(m)`.
///
/// Along the spine `⟨k,n,0⟩ → ⟨k-1,w',0⟩ → …` every bound label `⟨u,v,0⟩`
/// with `u ≥ 3` needs `v < r`, because `A_3(v) ≤ A_u(v) < m`. The spine's
/// arguments only grow, so the first violation already decides `Refuted`.
pub fn build_witness(
    k: u64,
    n: u64,
    r: u64,
    label_budget: usize,
) -> Result<BuildOutcome, WitnessError> {
    if k < 4 || n < 3 {
        return Err(WitnessError::Argument(format!(
            "certificates need k >= 4 and n >= 3, got k = {k}, n = {n}"
        )));
    }
    let mut spine = Vec::new();
    let (mut u, mut v) = (k, n);
    loop {
        if v >= r {
            return Ok(BuildOutcome::Refuted);
        }
        if u == 3 {
            break;
        }
        let Some(inner) = value_below(u, v - 1, r) else {
            return Ok(BuildOutcome::Refuted);
        };
        spine.push((u, v, inner));
        u -= 1;
        v = inner;
    }

    let mut builder = Builder {
        budget: label_budget,
        labels: BTreeSet::new(),
    };
    builder.insert(Label::below(3, v))?;
    for (u, v, inner) in spine {
        builder.insert(Label::below(u, v))?;
        builder.add_equality(Label::equals(u, v - 1, inner))?;
    }
    Ok(BuildOutcome::Witness(WitnessSeq {
        k,
        n,
        r,
        labels: builder.labels.into_iter().collect(),
    }))
}

/// The certificate predicate on a decoded label list: the last label is
/// `⟨k,n,0⟩` and each label is a leaf or is supported by two earlier labels
/// `⟨u,v-1,w'⟩` and `⟨u-1,w',w⟩` with `w' > 0`.
pub fn verify_labels(labels: &[Label], k: u64, n: u64, r: u64) -> bool {
    if labels.last() != Some(&Label::below(k, n)) {
        return false;
    }
    let mut seen: HashSet<Label> = HashSet::new();
    let mut values_at: HashMap<(u64, u64), Vec<u64>> = HashMap::new();
    for &label in labels {
        let supported = || {
            if label.u == 0 || label.v == 0 {
                return false;
            }
            values_at
                .get(&(label.u, label.v - 1))
                .is_some_and(|ws| {
                    ws.iter().any(|&inner| {
                        inner > 0
                            && seen.contains(&Label {
                                u: label.u - 1,
                                v: inner,
                                w: label.w,
                            })
                    })
                })
        };
        if !label.is_leaf(r) && !supported() {
            return false;
        }
        if seen.insert(label) {
            values_at.entry((label.u, label.v)).or_default().push(label.w);
        }
    }
    true
}

/// `Comput_<(s, k, n, r)` on a sequence code. Malformed codes are rejected.
pub fn comput_lt_verify(s: &SeqCode, k: u64, n: u64, r: u64) -> bool {
    let Ok(entries) = s.decode() else {
        return false;
    };
    let labels: Vec<Label> = entries.into_iter().map(Label::from_code).collect();
    verify_labels(&labels, k, n, r)
}

/// Brute-force search over every code `s ≤ max_code`, for cross-checking the
/// constructive path on tiny instances.
pub fn search_certificate(k: u64, n: u64, r: u64, max_code: u64) -> Option<u64> {
    (0..=max_code).find(|&s| comput_lt_verify(&SeqCode::new(BigNat::from(s)), k, n, r))
}

/// `A_k(n) < m`, decided by the case split on `n ≤ 2`, `k ≤ 3`, and the
/// certificate case `k ≥ 4, n ≥ 3`.
pub fn check_lt(k: u64, n: u64, m: &BigNat, meter: &mut CostMeter) -> Result<bool, WitnessError> {
    if n <= 2 {
        // A_k(0), A_k(1), A_k(2) = 1, 2, 4
        let threshold = [1, 2, 4][n as usize];
        return Ok(m.cmp_small(threshold, meter) == Ordering::Greater);
    }
    if k <= 3 {
        return Ok(inv_ak(k, m, meter) > n);
    }
    let log2m = iter_log(m, 2, meter);
    if k > log2m || n > log2m {
        return Ok(false);
    }
    let r = inv_ak(3, m, meter);
    if r <= 3 {
        return Ok(false);
    }
    match build_witness(k, n, r, DEFAULT_LABEL_BUDGET)? {
        BuildOutcome::Witness(w) => Ok(comput_lt_verify(&w.to_code()?, k, n, r)),
        BuildOutcome::Refuted => Ok(false),
    }
}

/// `A_k(n) = m` as `A_k(n) < m + 1 ∧ ¬(A_k(n) < m)`.
pub fn check_graph(k: u64, n: u64, m: &BigNat, meter: &mut CostMeter) -> Result<bool, WitnessError> {
    let next = m.succ(meter);
    Ok(check_lt(k, n, &next, meter)? && !check_lt(k, n, m, meter)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateStats {
    pub level: u64,
    pub labels: usize,
    pub code_bits: u64,
    /// `|s| / log^{(2)}(m)` for the supplied bound.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Phase2Outcome {
    pub alpha: u64,
    /// One entry per level `j` whose certificate of `A_j(j) < m` was found.
    pub certificates: Vec<CertificateStats>,
}

/// The certificate scan for `α(m)` once `A_3(3) < m` is known, driven by
/// `log^{(2)}(m)`, `log^{(4)}(m)` and `ρ_3 = Inv_{A_3}(m)` rather than `m`
/// itself. Returns the least `j ≥ 4` with no certificate for `A_j(j) < m`.
pub fn alpha_phase2(log2m_bound: u64, log4m: u64, rho3: u64) -> Result<Phase2Outcome, WitnessError> {
    if log4m < 4 {
        return Err(WitnessError::Argument(format!(
            "phase two needs log^(4)(m) >= 4, got {log4m}"
        )));
    }
    if rho3 <= 3 {
        return Err(WitnessError::Argument(format!(
            "phase two needs Inv_A3(m) > 3, got {rho3}"
        )));
    }
    let mut certificates = Vec::new();
    for j in 4..=log4m {
        let found = match build_witness(j, j, rho3, DEFAULT_LABEL_BUDGET)? {
            BuildOutcome::Witness(w) => {
                let code = w.to_code()?;
                comput_lt_verify(&code, j, j, rho3).then(|| {
                    let code_bits = code.value().stored_len();
                    CertificateStats {
                        level: j,
                        labels: w.labels().len(),
                        code_bits,
                        ratio: code_bits as f64 / log2m_bound as f64,
                    }
                })
            }
            BuildOutcome::Refuted => None,
        };
        match found {
            Some(stats) => certificates.push(stats),
            None => return Ok(Phase2Outcome { alpha: j, certificates }),
        }
    }
    Err(WitnessError::Argument(format!(
        "every level up to log^(4)(m) = {log4m} is certified; inputs are inconsistent"
    )))
}

/// On-disk certificate: a header line `k n r` and the sequence code in binary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFile {
    pub k: u64,
    pub n: u64,
    pub r: u64,
    pub code: SeqCode,
}

impl WitnessFile {
    pub fn render(&self) -> String {
        format!(
            "{} {} {}\n{}\n",
            self.k,
            self.n,
            self.r,
            self.code.value().to_binary_string()
        )
    }

    pub fn parse(text: &str) -> Result<Self, WitnessError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| WitnessError::Format("missing header line".into()))?;
        let fields = header
            .split_whitespace()
            .map(|f| {
                f.parse::<u64>()
                    .map_err(|_| WitnessError::Format(format!("bad header field {f:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let [k, n, r] = fields[..] else {
            return Err(WitnessError::Format("header must be `k n r`".into()));
        };
        let body = lines
            .next()
            .ok_or_else(|| WitnessError::Format("missing code line".into()))?;
        if lines.next().is_some() {
            return Err(WitnessError::Format("trailing lines".into()));
        }
        let code = BigNat::from_binary_str(body)
            .map_err(|e| WitnessError::Format(e.to_string()))?;
        Ok(Self {
            k,
            n,
            r,
            code: SeqCode::new(code),
        })
    }

    pub fn verify(&self) -> bool {
        comput_lt_verify(&self.code, self.k, self.n, self.r)
    }
}
