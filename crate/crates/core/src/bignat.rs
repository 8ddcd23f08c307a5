//! Natural numbers stored as little-endian binary digit sequences.
//!
//! Every routine that walks a digit sequence charges a [`CostMeter`]: one unit
//! per digit read or written plus one unit per loop iteration. The meter is
//! the machine-independent yardstick used to check the linear-time claims of
//! the inverse routines.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Default cap on the number of binary digits a single value may occupy.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BigNatError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("value exceeds the bit budget of {budget} bits")]
    BudgetExceeded { budget: u64 },
    #[error("value does not fit in a machine word")]
    Overflow,
    #[error("predecessor of zero")]
    Underflow,
}

/// Monotone counter of elementary digit operations.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct CostMeter {
    units: u64,
}

impl CostMeter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn charge(&mut self, units: u64) {
        self.units = self.units.saturating_add(units);
    }

    pub fn units(&self) -> u64 {
        self.units
    }

    pub fn reset(&mut self) {
        self.units = 0;
    }
}

/// An arbitrary-size natural number.
///
/// Digits are stored least significant first. The representation is
/// canonical: the most significant stored digit is `1`, except for zero which
/// is the single digit `0`. Values are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigNat {
    digits: Vec<bool>,
}

impl BigNat {
    pub fn zero() -> Self {
        Self {
            digits: vec![false],
        }
    }

    pub fn one() -> Self {
        Self { digits: vec![true] }
    }

    pub fn from_u64(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let len = 64 - n.leading_zeros() as usize;
        Self {
            digits: (0..len).map(|i| (n >> i) & 1 == 1).collect(),
        }
    }

    /// Builds a value from digits given least significant first, dropping
    /// high zero digits.
    pub fn from_le_digits<I: IntoIterator<Item = bool>>(digits: I) -> Self {
        let mut digits: Vec<bool> = digits.into_iter().collect();
        while digits.len() > 1 && !digits[digits.len() - 1] {
            digits.pop();
        }
        if digits.is_empty() {
            digits.push(false);
        }
        Self { digits }
    }

    /// `2^exponent`, provided the result fits in `budget` digits.
    pub fn pow2(exponent: u64, budget: u64) -> Result<Self, BigNatError> {
        if exponent >= budget {
            return Err(BigNatError::BudgetExceeded { budget });
        }
        let len = usize::try_from(exponent + 1).map_err(|_| BigNatError::BudgetExceeded { budget })?;
        let mut digits = vec![false; len];
        digits[len - 1] = true;
        Ok(Self { digits })
    }

    /// Digits, least significant first.
    pub fn digits(&self) -> &[bool] {
        &self.digits
    }

    /// Number of stored digits without charging a meter. Only for sizing
    /// decisions outside the metered algorithms.
    pub fn stored_len(&self) -> u64 {
        self.digits.len() as u64
    }

    pub fn is_zero(&self) -> bool {
        self.digits.len() == 1 && !self.digits[0]
    }

    /// `|n|`: the number of binary digits, with `|0| = 1`.
    pub fn bit_length(&self, meter: &mut CostMeter) -> u64 {
        let mut count = 0u64;
        for _ in &self.digits {
            meter.charge(2);
            count += 1;
        }
        count
    }

    /// `⌈log2 n⌉`, extended with `log(0) = 0`.
    ///
    /// One pass over the digits counts both the length and the set digits;
    /// a power of two has exactly one set digit.
    pub fn ceil_log2(&self, meter: &mut CostMeter) -> u64 {
        let mut len = 0u64;
        let mut ones = 0u64;
        for &d in &self.digits {
            meter.charge(2);
            len += 1;
            ones += d as u64;
        }
        match ones {
            0 => 0,
            1 => len - 1,
            _ => len,
        }
    }

    pub fn is_power_of_two(&self, meter: &mut CostMeter) -> bool {
        let mut ones = 0u64;
        for &d in &self.digits {
            meter.charge(2);
            ones += d as u64;
        }
        ones == 1
    }

    /// Compares against a machine word, reading at most 65 digits.
    pub fn cmp_small(&self, k: u64, meter: &mut CostMeter) -> Ordering {
        let probe = self.digits.len().min(65);
        meter.charge(probe as u64 + 1);
        if self.digits.len() > 64 {
            return Ordering::Greater;
        }
        self.low_word().cmp(&k)
    }

    pub fn compare(&self, other: &Self, meter: &mut CostMeter) -> Ordering {
        meter.charge(self.digits.len().min(other.digits.len()) as u64 + 1);
        match self.digits.len().cmp(&other.digits.len()) {
            Ordering::Equal => {}
            unequal => return unequal,
        }
        for (a, b) in self.digits.iter().rev().zip(other.digits.iter().rev()) {
            meter.charge(3);
            match a.cmp(b) {
                Ordering::Equal => continue,
                unequal => return unequal,
            }
        }
        Ordering::Equal
    }

    pub fn succ(&self, meter: &mut CostMeter) -> Self {
        let mut digits = self.digits.clone();
        meter.charge(digits.len() as u64);
        for d in digits.iter_mut() {
            meter.charge(2);
            if *d {
                *d = false;
            } else {
                *d = true;
                return Self { digits };
            }
        }
        meter.charge(1);
        digits.push(true);
        Self { digits }
    }

    pub fn pred(&self, meter: &mut CostMeter) -> Result<Self, BigNatError> {
        if self.is_zero() {
            return Err(BigNatError::Underflow);
        }
        let mut digits = self.digits.clone();
        meter.charge(digits.len() as u64);
        for d in digits.iter_mut() {
            meter.charge(2);
            if *d {
                *d = false;
                break;
            }
            *d = true;
        }
        Ok(Self::from_le_digits(digits))
    }

    pub fn to_small(&self, meter: &mut CostMeter) -> Result<u64, BigNatError> {
        meter.charge(self.digits.len().min(65) as u64);
        if self.digits.len() > 64 {
            return Err(BigNatError::Overflow);
        }
        Ok(self.low_word())
    }

    /// Most significant digit first, no leading zeros, `0` for zero.
    pub fn to_binary_string(&self) -> String {
        self.digits
            .iter()
            .rev()
            .map(|&d| if d { '1' } else { '0' })
            .collect()
    }

    /// Parses a binary string, most significant digit first, without prefix.
    pub fn from_binary_str(text: &str) -> Result<Self, BigNatError> {
        if text.is_empty() {
            return Err(BigNatError::Syntax {
                offset: 0,
                message: "empty binary string".into(),
            });
        }
        let mut digits = Vec::with_capacity(text.len());
        for (offset, c) in text.bytes().enumerate().rev() {
            match c {
                b'0' => digits.push(false),
                b'1' => digits.push(true),
                _ => {
                    return Err(BigNatError::Syntax {
                        offset,
                        message: format!("unexpected {:?} in binary digits", c as char),
                    })
                }
            }
        }
        Ok(Self::from_le_digits(digits))
    }

    fn low_word(&self) -> u64 {
        self.digits
            .iter()
            .take(64)
            .enumerate()
            .fold(0u64, |acc, (i, &d)| acc | ((d as u64) << i))
    }
}

impl From<u64> for BigNat {
    fn from(n: u64) -> Self {
        Self::from_u64(n)
    }
}

impl PartialOrd for BigNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigNat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other, &mut CostMeter::new())
    }
}

impl fmt::Debug for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.len() <= 64 {
            write!(f, "BigNat({})", self.low_word())
        } else {
            write!(f, "BigNat(<{} bits>)", self.digits.len())
        }
    }
}

/// Decimal when the value fits a machine word, `0b`-prefixed binary
/// otherwise. Either form parses back as a literal.
impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.len() <= 64 {
            write!(f, "{}", self.low_word())
        } else {
            write!(f, "0b{}", self.to_binary_string())
        }
    }
}

/// `⌈log2 n⌉` on a machine word with `log(0) = log(1) = 0`, charged as a scan
/// over the word's `|n|` digits.
pub fn ceil_log2_small(n: u64, meter: &mut CostMeter) -> u64 {
    let len = (64 - n.leading_zeros() as u64).max(1);
    meter.charge(2 * len);
    if n <= 1 {
        0
    } else if n.is_power_of_two() {
        len - 1
    } else {
        len
    }
}
