//! Non-negative big integers and their multiplication.
//!
//! [`schoolbook_mul`] is the quadratic reference. [`ssa_mul`] splits both
//! operands into `N` parts, convolves the parts over `Z/(2^K + 1)` with the
//! circulant recursion (every root multiplication a shift), and carries the
//! coefficients back together.

mod ssa;

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::error::ParseError;
use crate::limbs;

pub(crate) use ssa::SsaRuntime;
pub use ssa::{
    carry_propagate, choose_params, ssa_mul, ssa_mul_traced, ssa_mul_with, SsaConfig, SsaParams,
    SsaPlan, SsaTrace, DEFAULT_THRESHOLD_WORDS,
};

/// Magnitude in base `2^64`, little-endian, without trailing zero limbs.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BigNumber {
    limbs: Vec<u64>,
}

const DECIMAL_CHUNK: usize = 19;
const DECIMAL_BASE: u64 = 10_000_000_000_000_000_000;

impl BigNumber {
    pub fn zero() -> BigNumber {
        BigNumber { limbs: Vec::new() }
    }

    pub fn from_u64(v: u64) -> BigNumber {
        BigNumber::from_limbs(vec![v])
    }

    pub fn from_limbs(mut limbs: Vec<u64>) -> BigNumber {
        limbs::trim(&mut limbs);
        BigNumber { limbs }
    }

    /// Builds a number from little-endian bytes.
    pub fn from_le_bytes(bytes: &[u8]) -> BigNumber {
        let limbs = bytes
            .chunks(8)
            .map(|c| {
                let mut buf = [0u8; 8];
                buf[..c.len()].copy_from_slice(c);
                u64::from_le_bytes(buf)
            })
            .collect();
        BigNumber::from_limbs(limbs)
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn bit_len(&self) -> u64 {
        limbs::bit_len(&self.limbs)
    }

    /// Parses a non-empty string of ASCII decimal digits.
    pub fn from_decimal(s: &str) -> Result<BigNumber, ParseError> {
        if s.is_empty() {
            return Err(ParseError::new(
                1,
                1,
                "expected a decimal number, found nothing",
            ));
        }
        if let Some((i, c)) = s.chars().enumerate().find(|(_, c)| !c.is_ascii_digit()) {
            return Err(ParseError::new(
                1,
                i + 1,
                format!("unexpected character {c:?} in decimal number"),
            ));
        }
        let digits = s.as_bytes();
        let head = digits.len() % DECIMAL_CHUNK;
        let mut acc: Vec<u64> = Vec::with_capacity(digits.len() / DECIMAL_CHUNK + 1);
        let push_chunk = |chunk: &[u8], acc: &mut Vec<u64>| {
            let v = chunk.iter().fold(0u64, |v, d| v * 10 + (d - b'0') as u64);
            let scale = 10u64.pow(chunk.len() as u32);
            limbs::mul_small_add(acc, scale, v);
        };
        if head > 0 {
            push_chunk(&digits[..head], &mut acc);
        }
        for chunk in digits[head..].chunks(DECIMAL_CHUNK) {
            push_chunk(chunk, &mut acc);
        }
        Ok(BigNumber::from_limbs(acc))
    }

    pub fn to_decimal(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut rest = self.limbs.clone();
        let mut chunks = Vec::new();
        while !rest.is_empty() {
            chunks.push(limbs::div_small(&mut rest, DECIMAL_BASE));
        }
        let mut out = String::with_capacity(chunks.len() * DECIMAL_CHUNK);
        let mut iter = chunks.iter().rev();
        if let Some(top) = iter.next() {
            out.push_str(&top.to_string());
        }
        for c in iter {
            out.push_str(&format!("{c:019}"));
        }
        out
    }

    /// `self · 2^bits`.
    pub fn shl(&self, bits: u64) -> BigNumber {
        if self.is_zero() {
            return BigNumber::zero();
        }
        BigNumber::from_limbs(limbs::shl(&self.limbs, bits))
    }
}

impl FromStr for BigNumber {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigNumber::from_decimal(s)
    }
}

impl fmt::Display for BigNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl fmt::Debug for BigNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigNumber({})", self.to_decimal())
    }
}

impl Add for &BigNumber {
    type Output = BigNumber;

    fn add(self, rhs: &BigNumber) -> BigNumber {
        let mut out = self.limbs.clone();
        limbs::add_assign(&mut out, &rhs.limbs);
        BigNumber::from_limbs(out)
    }
}

impl Add for BigNumber {
    type Output = BigNumber;

    fn add(self, rhs: BigNumber) -> BigNumber {
        &self + &rhs
    }
}

/// Quadratic word-by-word product with carries.
pub fn schoolbook_mul(x: &BigNumber, y: &BigNumber) -> BigNumber {
    if x.is_zero() || y.is_zero() {
        return BigNumber::zero();
    }
    BigNumber::from_limbs(limbs::mul_schoolbook(&x.limbs, &y.limbs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_roundtrip_and_boundaries() {
        for s in [
            "0",
            "1",
            "18446744073709551615",
            "18446744073709551616",
            "9999999999999999999",
            "10000000000000000000",
            "340282366920938463463374607431768211456",
        ] {
            assert_eq!(BigNumber::from_decimal(s).unwrap().to_decimal(), s);
        }
        assert_eq!(
            BigNumber::from_decimal("000123").unwrap().to_decimal(),
            "123"
        );
        assert_eq!(
            BigNumber::from_decimal("18446744073709551616")
                .unwrap()
                .limbs(),
            &[0, 1]
        );
    }

    #[test]
    fn decimal_errors() {
        let err = BigNumber::from_decimal("12a4").unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
        assert!(BigNumber::from_decimal("").is_err());
        assert!(BigNumber::from_decimal("-5").is_err());
        assert!(BigNumber::from_decimal(" 5").is_err());
    }

    #[test]
    fn schoolbook_examples() {
        let n = |s: &str| s.parse::<BigNumber>().unwrap();
        assert_eq!(schoolbook_mul(&n("999"), &n("999")), n("998001"));
        assert_eq!(schoolbook_mul(&n("0"), &n("123456789")), BigNumber::zero());
        assert_eq!(
            schoolbook_mul(&n("1"), &n("123456789123456789123")),
            n("123456789123456789123")
        );
        assert_eq!(
            schoolbook_mul(&n("18446744073709551615"), &n("18446744073709551615")),
            n("340282366920938463426481119284349108225")
        );
    }

    #[test]
    fn bytes_and_addition() {
        let x = BigNumber::from_le_bytes(&[0xff; 9]);
        assert_eq!(x.limbs(), &[u64::MAX, 0xff]);
        assert_eq!(
            &x + &BigNumber::from_u64(1),
            BigNumber::from_limbs(vec![0, 0x100])
        );
        assert!(BigNumber::from_le_bytes(&[0, 0, 0]).is_zero());
        assert_eq!(BigNumber::from_u64(3).shl(64).limbs(), &[0, 3]);
    }
}
