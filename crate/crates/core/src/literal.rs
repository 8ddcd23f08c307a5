//! Input syntax for values too large to type out.
//!
//! ```text
//! literal := "0" | nonzero-decimal | "0b" [01]+ | "0x" hex+
//!          | "pow2(" literal ")" | "tower(" small "," small ")"
//! ```
//!
//! `tower(h, t)` is the `h`-fold iterate of `n ↦ 2^n` applied to `t`.

use crate::bignat::{BigNat, BigNatError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumLiteral {
    Decimal(String),
    Binary(String),
    Hex(String),
    Pow2(Box<NumLiteral>),
    Tower { height: u64, base: u64 },
}

/// Parses and materializes `text`, refusing any value wider than `budget` bits.
pub fn parse_literal(text: &str, budget: u64) -> Result<BigNat, BigNatError> {
    NumLiteral::parse(text)?.materialize(budget)
}

impl NumLiteral {
    pub fn parse(text: &str) -> Result<Self, BigNatError> {
        let mut parser = Parser { text, pos: 0 };
        let lit = parser.literal()?;
        if parser.pos != text.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(lit)
    }

    pub fn materialize(&self, budget: u64) -> Result<BigNat, BigNatError> {
        let exceeded = BigNatError::BudgetExceeded { budget };
        match self {
            NumLiteral::Decimal(digits) => decimal_to_bignat(digits, budget),
            NumLiteral::Binary(digits) => {
                let n = BigNat::from_binary_str(digits)?;
                if n.stored_len() > budget {
                    return Err(exceeded);
                }
                Ok(n)
            }
            NumLiteral::Hex(digits) => {
                let bits = digits
                    .bytes()
                    .rev()
                    .flat_map(|c| {
                        let nibble = (c as char).to_digit(16).expect("validated by parser");
                        (0..4).map(move |i| (nibble >> i) & 1 == 1)
                    });
                let n = BigNat::from_le_digits(bits);
                if n.stored_len() > budget {
                    return Err(exceeded);
                }
                Ok(n)
            }
            NumLiteral::Pow2(inner) => {
                let exponent = inner.materialize(budget)?;
                let exponent = exponent
                    .to_small(&mut Default::default())
                    .map_err(|_| exceeded.clone())?;
                BigNat::pow2(exponent, budget)
            }
            NumLiteral::Tower { height, base } => {
                let mut value = BigNat::from_u64(*base);
                for _ in 0..*height {
                    let exponent = value
                        .to_small(&mut Default::default())
                        .map_err(|_| exceeded.clone())?;
                    value = BigNat::pow2(exponent, budget)?;
                }
                if value.stored_len() > budget {
                    return Err(exceeded);
                }
                Ok(value)
            }
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> BigNatError {
        BigNatError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), BigNatError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        let len = self.rest().bytes().take_while(|&c| pred(c)).count();
        self.pos += len;
        &self.text[start..self.pos]
    }

    fn literal(&mut self) -> Result<NumLiteral, BigNatError> {
        if self.eat("pow2(") {
            let inner = self.literal()?;
            self.expect(")")?;
            return Ok(NumLiteral::Pow2(Box::new(inner)));
        }
        if self.eat("tower(") {
            let height = self.small_decimal()?;
            self.expect(",")?;
            let base = self.small_decimal()?;
            self.expect(")")?;
            return Ok(NumLiteral::Tower { height, base });
        }
        if self.eat("0b") {
            let digits = self.take_while(|c| c == b'0' || c == b'1');
            if digits.is_empty() {
                return Err(self.error("expected binary digits"));
            }
            return Ok(NumLiteral::Binary(digits.to_string()));
        }
        if self.eat("0x") {
            let digits = self.take_while(|c| c.is_ascii_hexdigit());
            if digits.is_empty() {
                return Err(self.error("expected hex digits"));
            }
            return Ok(NumLiteral::Hex(digits.to_string()));
        }
        self.decimal().map(|d| NumLiteral::Decimal(d.to_string()))
    }

    fn decimal(&mut self) -> Result<&str, BigNatError> {
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            self.pos = start;
            return Err(self.error("expected a literal"));
        }
        if digits.len() > 1 && digits.starts_with('0') {
            self.pos = start;
            return Err(self.error("decimal literal with leading zero"));
        }
        Ok(&self.text[start..self.pos])
    }

    fn small_decimal(&mut self) -> Result<u64, BigNatError> {
        let start = self.pos;
        let digits = self.decimal()?;
        digits.parse().map_err(|_| BigNatError::Syntax {
            offset: start,
            message: "tower argument does not fit a machine word".into(),
        })
    }
}

fn decimal_to_bignat(digits: &str, budget: u64) -> Result<BigNat, BigNatError> {
    // Each decimal digit past the first adds more than three bits.
    if (digits.len() as u64).saturating_sub(1).saturating_mul(3) > budget {
        return Err(BigNatError::BudgetExceeded { budget });
    }
    // Little-endian base 2^32 limbs, fed nine decimal digits at a time.
    let mut limbs: Vec<u32> = vec![0];
    for chunk in digits.as_bytes().chunks(9) {
        let scale = 10u64.pow(chunk.len() as u32);
        let mut carry = chunk.iter().fold(0u64, |acc, &c| acc * 10 + (c - b'0') as u64);
        for limb in limbs.iter_mut() {
            let wide = *limb as u64 * scale + carry;
            *limb = wide as u32;
            carry = wide >> 32;
        }
        if carry > 0 {
            limbs.push(carry as u32);
        }
    }
    let n = BigNat::from_le_digits(
        limbs
            .iter()
            .flat_map(|&limb| (0..32).map(move |i| (limb >> i) & 1 == 1)),
    );
    if n.stored_len() > budget {
        return Err(BigNatError::BudgetExceeded { budget });
    }
    Ok(n)
}
