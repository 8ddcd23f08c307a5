//! Cantor pairing, triples, and a self-delimiting code for finite sequences.
//!
//! A sequence is written as the binary expansions of its entries, most
//! significant digit first, with every digit doubled (`0 → 00`, `1 → 11`)
//! and each entry closed by the separator pair `01`. Pair `j` of a code `s`
//! occupies digit positions `2j` (first) and `2j + 1` (second), so the final
//! separator carries the leading digit of `s`.

use thiserror::Error;

use crate::bignat::BigNat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("cannot encode an empty sequence")]
    EmptySequence,
    #[error("not a valid sequence code")]
    InvalidSequence,
    #[error("index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("sequence entry does not fit a machine word")]
    EntryOverflow,
}

/// `⌊√n⌋` by binary search over the bit length of `n`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    let mut lo: u128 = 1 << ((bits - 1) / 2);
    let mut hi: u128 = 1 << bits.div_ceil(2);
    // lo² ≤ n < hi²
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if mid * mid <= n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `⟨u, v⟩ = (u+v)(u+v+1)/2 + v`, or `None` if it does not fit 64 bits.
pub fn pair(u: u64, v: u64) -> Option<u64> {
    let s = u as u128 + v as u128;
    let code = s.checked_mul(s + 1)? / 2 + v as u128;
    u64::try_from(code).ok()
}

/// Inverse of [`pair`].
pub fn unpair(w: u64) -> (u64, u64) {
    let twice = 2 * w as u128;
    let root = isqrt(twice);
    // Either the root or its predecessor is the diagonal index.
    let diag = if root * (root + 1) <= twice { root } else { root - 1 };
    let delta = w as u128 - diag * (diag + 1) / 2;
    ((diag - delta) as u64, delta as u64)
}

/// `⟨u, v, w⟩ = ⟨⟨u, v⟩, w⟩`.
pub fn triple(u: u64, v: u64, w: u64) -> Option<u64> {
    pair(pair(u, v)?, w)
}

pub fn untriple(x: u64) -> (u64, u64, u64) {
    let (uv, w) = unpair(x);
    let (u, v) = unpair(uv);
    (u, v, w)
}

/// A natural number read as a sequence code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqCode(BigNat);

impl SeqCode {
    pub fn new(value: BigNat) -> Self {
        Self(value)
    }

    pub fn value(&self) -> &BigNat {
        &self.0
    }

    pub fn into_value(self) -> BigNat {
        self.0
    }

    /// The digit pairs `(ε_{2j}, ε_{2j+1})`, or `None` if the code has an odd
    /// number of digits and so cannot end in a separator.
    pub fn pairs(&self) -> Option<Vec<(bool, bool)>> {
        let digits = self.0.digits();
        if !digits.len().is_multiple_of(2) {
            return None;
        }
        Some(digits.chunks_exact(2).map(|p| (p[0], p[1])).collect())
    }

    /// The `Seq` predicate: at least two pairs, the first a digit pair, the
    /// last a separator, and no separator before the last two pairs followed
    /// by another separator.
    pub fn is_valid(&self) -> bool {
        let Some(pairs) = self.pairs() else {
            return false;
        };
        let t = pairs.len();
        if t < 2 {
            return false;
        }
        let is_sep = |p: (bool, bool)| !p.0 && p.1;
        if pairs[0].0 != pairs[0].1 || !is_sep(pairs[t - 1]) {
            return false;
        }
        // A separator at j < t-2 must be followed by a digit pair.
        (0..t - 2).all(|j| !is_sep(pairs[j]) || pairs[j + 1].0 == pairs[j + 1].1)
    }

    /// Decodes every entry. Pairs between separators contribute their first
    /// digit; an empty field decodes to zero.
    pub fn decode(&self) -> Result<Vec<u64>, EncodingError> {
        if !self.is_valid() {
            return Err(EncodingError::InvalidSequence);
        }
        let pairs = self.pairs().expect("valid code has pairs");
        let mut entries = Vec::new();
        let mut value: u64 = 0;
        for (first, second) in pairs {
            if !first && second {
                entries.push(value);
                value = 0;
            } else {
                if value >> 63 != 0 {
                    return Err(EncodingError::EntryOverflow);
                }
                value = (value << 1) | first as u64;
            }
        }
        Ok(entries)
    }

    /// `l(s)`, the number of separator pairs. Valid codes are never empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Result<usize, EncodingError> {
        if !self.is_valid() {
            return Err(EncodingError::InvalidSequence);
        }
        Ok(self
            .pairs()
            .expect("valid code has pairs")
            .into_iter()
            .filter(|&(a, b)| !a && b)
            .count())
    }

    /// `s(i)`.
    pub fn get(&self, index: usize) -> Result<u64, EncodingError> {
        let entries = self.decode()?;
        let len = entries.len();
        entries
            .get(index)
            .copied()
            .ok_or(EncodingError::IndexOutOfRange { index, len })
    }
}

pub fn seq_encode(xs: &[u64]) -> Result<SeqCode, EncodingError> {
    if xs.is_empty() {
        return Err(EncodingError::EmptySequence);
    }
    let mut digits = Vec::new();
    for &x in xs {
        let width = (64 - x.leading_zeros()).max(1);
        for i in (0..width).rev() {
            let d = (x >> i) & 1 == 1;
            digits.push(d);
            digits.push(d);
        }
        digits.push(false);
        digits.push(true);
    }
    Ok(SeqCode(BigNat::from_le_digits(digits)))
}

pub fn seq_is_valid(s: &BigNat) -> bool {
    SeqCode::new(s.clone()).is_valid()
}

pub fn seq_len(s: &BigNat) -> Result<usize, EncodingError> {
    SeqCode::new(s.clone()).len()
}

pub fn seq_get(s: &BigNat, index: usize) -> Result<u64, EncodingError> {
    SeqCode::new(s.clone()).get(index)
}

pub fn seq_decode(s: &BigNat) -> Result<Vec<u64>, EncodingError> {
    SeqCode::new(s.clone()).decode()
}
